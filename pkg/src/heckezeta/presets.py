"""Built-in presets and config loading.

A preset bundles a root datum, its extended affine Weyl group (Omega
generators and residue-field exponents d(s)) and optional case-specific data.
The fixed presets live in ``data/*.json``; GL_n is generated for any n.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import InvalidRootDatum
from .rootdata import RootDatum, gln_datum
from .weyl import AffineWeyl, ExtAffineElement, mat_identity

CONFIG_VERSION = 1


@dataclass
class Preset:
    name: str
    datum: RootDatum
    affine: AffineWeyl
    split: bool = True
    extra: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.datum.rank


def _omega_from_config(datum: RootDatum, block: dict) -> dict[str, ExtAffineElement]:
    out = {}
    for name, spec in block.items():
        trans = tuple(spec.get("translation", spec.get("lambda")))
        if "matrix" in spec:
            mat = tuple(tuple(row) for row in spec["matrix"])
        else:
            word = [int(tok[1:]) for tok in spec.get("word", "").split()]
            mat = datum.weyl.element_from_word(word).matrix if word else mat_identity(datum.rank)
        out[name] = ExtAffineElement(trans, mat)
    return out


def preset_from_config(block: dict) -> Preset:
    version = block.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise InvalidRootDatum(f"unsupported config version {version}")
    datum = RootDatum.from_config(block)
    omega = _omega_from_config(datum, block.get("omega", {}))
    affine = AffineWeyl(datum, omega, block.get("paramExp"))
    for name, el in omega.items():
        if affine.length(el) != 0:
            raise InvalidRootDatum(f"Omega generator {name} does not have length zero")
        affine.omega_permutation(el)
    extra = {k: v for k, v in block.items()
             if k not in {"version", "name", "rank", "roots", "coroots", "simples",
                          "multiplicities", "paramExp", "omega", "split"}}
    return Preset(block.get("name", "inline"), datum, affine, bool(block.get("split", True)), extra)


def _load_json(name: str) -> dict:
    text = resources.files("heckezeta").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def gln_preset(n: int) -> Preset:
    """GL_n together with the similitude coordinate f0 (Lambda = Z^{n+1}).

    Omega is generated by r = varpi^{f0} rho and the central z = varpi^{f0},
    where rho has varpi in its lower-left corner.
    """
    datum = gln_datum(n, with_similitude=True)
    r = n + 1
    shift = [[0] * r for _ in range(r)]
    shift[0][0] = 1
    for i in range(1, n):
        shift[i][i + 1] = 1
    shift[n][1] = 1
    shift_m = tuple(tuple(row) for row in shift)
    trans_r = [0] * r
    trans_r[0] = -1
    trans_r[n] = -1
    trans_z = [0] * r
    trans_z[0] = -1
    omega = {
        "r": ExtAffineElement(tuple(trans_r), shift_m),
        "z": ExtAffineElement(tuple(trans_z), mat_identity(r)),
    }
    affine = AffineWeyl(datum, omega)
    return Preset(f"gl{n}", datum, affine, True, {"n": n})


@lru_cache(maxsize=None)
def get_preset(name: str, n: int | None = None) -> Preset:
    """Look up a named preset: gl2, gln (needs n), gl2-toy, gsp4, gu4, gu4-levi."""
    key = name.lower()
    if key in ("gln", "gl_n"):
        if n is None:
            raise ValueError("preset gln needs n")
        return gln_preset(n)
    if key.startswith("gl") and key[2:].isdigit() and key != "gl2":
        return gln_preset(int(key[2:]))
    if key == "gl2-toy":
        p = gln_preset(2)
        return Preset("gl2-toy", p.datum, p.affine, True, {"n": 2, "m": 1})
    if key in ("gl2", "gsp4", "gu4", "gu4-levi", "gsp4-levi"):
        block = _load_json("gu4_levi" if key.endswith("levi") else key)
        return preset_from_config(block)
    raise KeyError(f"unknown preset {name!r}")


def load_config(path: str) -> Preset:
    """Read an inline root-datum config file (versioned JSON)."""
    with open(path) as fh:
        return preset_from_config(json.load(fh))
