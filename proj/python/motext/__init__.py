"""Ext over motivic Steenrod subalgebras."""

from importlib import resources as _resources

from ._motext import (  # noqa: F401
    NamingError,
    Resolution,
    ResolutionError,
    Workspace,
    YonedaError,
    presets,
    read_tsv,
)

__all__ = [
    "NamingError",
    "Resolution",
    "ResolutionError",
    "Workspace",
    "YonedaError",
    "palette_path",
    "presets",
    "read_tsv",
    "resolve",
]


def palette_path() -> str:
    return str(_resources.files(__name__) / "data" / "palette.json")


def resolve(algebra: str, max_stem: int, max_f: int, threads: int = 1) -> Resolution:
    """A resolution of the preset algebra through the given stem and filtration."""
    r = Resolution(algebra, max_stem + max_f + 2)
    r.extend(max_stem, max_f, threads)
    return r
