"""Material records and the line-oriented material database."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional, Union

from .constants import CODATA

MATERIALS_ENV = "SNSPEC_MATERIALS"

_COLUMNS = (
    "name",
    "atomic_mass_amu",
    "density_g_cm3",
    "sigma_pm",
    "debye_waller_B_A2",
    "temperature_mK",
)


class MaterialNotFoundError(KeyError):
    def __init__(self, name: str, available: list[str]):
        self.name = name
        self.available = available
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown material {self.name!r}; available: {', '.join(self.available)}"


class MaterialDataError(ValueError):
    """Malformed material data file."""


def sigma_from_B(B: float) -> float:
    """Nuclear localization length sigma = 2 pi sqrt(B), B in m^2."""
    if not B > 0:
        raise ValueError(f"Debye-Waller B must be positive, got {B}")
    return 2 * math.pi * math.sqrt(B)


@dataclass(frozen=True)
class Material:
    """A crystalline material, stored in SI.

    Use :meth:`from_table_units` to build one from amu, g/cm^3 and pm.
    """

    name: str
    atomic_mass: float  # amu
    density: float  # kg m^-3
    sigma: float  # m
    reference_temperature: float = 0.1  # K
    debye_waller_B: Optional[float] = None  # m^2

    def __post_init__(self):
        if not (self.atomic_mass > 0 and self.density > 0 and self.sigma > 0):
            raise ValueError(f"material {self.name!r}: mass, density and sigma must be positive")
        if self.debye_waller_B is not None and not math.isclose(
            self.sigma, sigma_from_B(self.debye_waller_B), rel_tol=1e-12
        ):
            raise ValueError(f"material {self.name!r}: sigma inconsistent with B")

    @classmethod
    def from_table_units(
        cls,
        name: str,
        atomic_mass_amu: float,
        density_g_cm3: float,
        sigma_pm: Optional[float] = None,
        debye_waller_B_A2: Optional[float] = None,
        temperature_mK: float = 100.0,
    ) -> "Material":
        if sigma_pm is None and debye_waller_B_A2 is None:
            raise ValueError(f"material {name!r}: need sigma_pm or debye_waller_B_A2")
        B = None if debye_waller_B_A2 is None else debye_waller_B_A2 * 1e-20
        sigma = sigma_from_B(B) if sigma_pm is None else sigma_pm * 1e-12
        return cls(
            name=name,
            atomic_mass=atomic_mass_amu,
            density=density_g_cm3 * 1e3,
            sigma=sigma,
            reference_temperature=temperature_mK * 1e-3,
            debye_waller_B=B if sigma_pm is None else None,
        )

    @property
    def atomic_mass_kg(self) -> float:
        return self.atomic_mass * CODATA.amu


class MaterialDatabase:
    """Materials keyed by case-insensitive name. Immutable once built."""

    def __init__(self, materials):
        entries: dict[str, Material] = {}
        for mat in materials:
            key = mat.name.lower()
            if key in entries:
                raise MaterialDataError(f"duplicate material {mat.name!r}")
            entries[key] = mat
        self._entries = entries

    def __getitem__(self, name: str) -> Material:
        try:
            return self._entries[name.lower()]
        except KeyError:
            raise MaterialNotFoundError(name, self.names()) from None

    def __contains__(self, name: str) -> bool:
        return name.lower() in self._entries

    def __iter__(self) -> Iterator[Material]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> list[str]:
        return [m.name for m in self._entries.values()]

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "MaterialDatabase":
        header = None
        materials = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if header is None:
                header = fields
                missing = {"name", "atomic_mass_amu", "density_g_cm3"} - set(header)
                if missing:
                    raise MaterialDataError(f"{source}:{lineno}: header lacks {sorted(missing)}")
                unknown = set(header) - set(_COLUMNS)
                if unknown:
                    raise MaterialDataError(f"{source}:{lineno}: unknown columns {sorted(unknown)}")
                continue
            if len(fields) != len(header):
                raise MaterialDataError(
                    f"{source}:{lineno}: expected {len(header)} fields, got {len(fields)}"
                )
            rec = {k: v for k, v in zip(header, fields) if v != "-"}
            try:
                name = rec.pop("name")
                kwargs = {k: float(v) for k, v in rec.items()}
                materials.append(Material.from_table_units(name, **kwargs))
            except (KeyError, ValueError) as exc:
                raise MaterialDataError(f"{source}:{lineno}: {exc}") from exc
        return cls(materials)

    @classmethod
    def load(cls, path: Union[str, Path, None] = None) -> "MaterialDatabase":
        """Load from ``path``, else $SNSPEC_MATERIALS, else the bundled table."""
        if path is None:
            path = os.environ.get(MATERIALS_ENV)
        if path is None:
            text = resources.files("snspec").joinpath("data/materials.txt").read_text()
            return cls.parse(text, "materials.txt")
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise MaterialDataError(f"cannot read {path}: {exc}") from exc
        return cls.parse(text, str(path))

    def dumps(self) -> str:
        lines = ["\t".join(_COLUMNS)]
        for m in self:
            B = "-" if m.debye_waller_B is None else repr(m.debye_waller_B * 1e20)
            sigma = repr(m.sigma * 1e12) if m.debye_waller_B is None else "-"
            lines.append(
                "\t".join(
                    [m.name, repr(m.atomic_mass), repr(m.density / 1e3), sigma, B,
                     repr(m.reference_temperature * 1e3)]
                )
            )
        return "\n".join(lines) + "\n"


_default_db: Optional[MaterialDatabase] = None


def default_database() -> MaterialDatabase:
    global _default_db
    if _default_db is None:
        _default_db = MaterialDatabase.load()
    return _default_db


def lookup_material(name: str, database: Optional[MaterialDatabase] = None) -> Material:
    return (database or default_database())[name]
