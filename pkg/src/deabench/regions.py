"""Canonical list of the 21 regional units and the name alias table."""
from __future__ import annotations

import re

REGIONS: tuple[str, ...] = (
    "Abruzzo",
    "Alto Adige",
    "Basilicata",
    "Calabria",
    "Campania",
    "Emilia-Romagna",
    "Friuli-Venezia Giulia",
    "Lazio",
    "Liguria",
    "Lombardia",
    "Marche",
    "Molise",
    "Piemonte",
    "Puglia",
    "Sardegna",
    "Sicilia",
    "Toscana",
    "Trentino",
    "Umbria",
    "Valle d'Aosta",
    "Veneto",
)

# normalised spelling -> canonical name; canonical names map to themselves
_ALIASES = {
    "p a bolzano": "Alto Adige",
    "pa bolzano": "Alto Adige",
    "prov aut bolzano": "Alto Adige",
    "provincia autonoma di bolzano": "Alto Adige",
    "bolzano": "Alto Adige",
    "sudtirol": "Alto Adige",
    "p a trento": "Trentino",
    "pa trento": "Trentino",
    "prov aut trento": "Trentino",
    "provincia autonoma di trento": "Trentino",
    "trento": "Trentino",
    "emilia romagna": "Emilia-Romagna",
    "friuli venezia giulia": "Friuli-Venezia Giulia",
    "friuli v g": "Friuli-Venezia Giulia",
    "fvg": "Friuli-Venezia Giulia",
    "valle d aosta": "Valle d'Aosta",
    "valle daosta": "Valle d'Aosta",
}

_UNSPLIT = {"trentino alto adige", "trentino alto adige sudtirol"}


class UnknownRegionError(KeyError):
    def __str__(self):
        return str(self.args[0])


def _key(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", " ", name.lower().replace("ü", "u")).strip()


_LOOKUP = {_key(r): r for r in REGIONS}
_LOOKUP.update(_ALIASES)


def normalize_region(name: str) -> str:
    """Map a spelling such as ``"PROV AUT BOLZANO"`` to its canonical unit name."""
    k = _key(name)
    if k in _UNSPLIT:
        raise UnknownRegionError(
            f"{name!r} is not a unit here: use the two provinces 'Trentino' and 'Alto Adige'")
    try:
        return _LOOKUP[k]
    except KeyError:
        raise UnknownRegionError(f"unknown region {name!r}") from None


def is_region(name: str) -> bool:
    return _key(name) in _LOOKUP
