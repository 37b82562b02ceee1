"""Exact replay of the computations behind two elliptic K3 surfaces."""

from pathlib import Path

from ._core import (
    Report,
    Spec,
    SpecError,
    degree_dimension,
    groebner_basis,
    kodaira_type,
    load_spec,
    parse_spec,
    run,
)

__all__ = [
    "Report",
    "Spec",
    "SpecError",
    "bundled_spec",
    "degree_dimension",
    "groebner_basis",
    "kodaira_type",
    "load_spec",
    "parse_spec",
    "run",
    "verify",
]

DATA_DIR = Path(__file__).resolve().parent / "data"


def bundled_spec(name):
    """Path of a bundled spec ("s29" or "s37")."""
    path = DATA_DIR / f"{name}.yaml"
    if not path.exists():
        raise FileNotFoundError(f"no bundled spec named {name!r}")
    return path


def verify(name, **options):
    """Runs a bundled spec; options are passed to run()."""
    return run(load_spec(bundled_spec(name)), **options)
