"""The example polynomials shipped with the package."""

from importlib import resources


def paths():
    """Shipped ``.poly`` files, sorted by name."""
    root = resources.files("saito") / "data" / "corpus"
    return sorted((p for p in root.iterdir() if p.name.endswith(".poly")), key=lambda p: p.name)


def find(name):
    """The shipped file called ``name`` (with or without ``.poly``), or ``None``."""
    for p in paths():
        if p.name in (name, f"{name}.poly"):
            return p
    return None
