"""Exact computations for Holant problems Holant(f | =3) on 3-regular bipartite graphs."""

from __future__ import annotations

__version__ = "0.1.0"

from .classifier import PTime, SharpPHard, SharpPHardButPlanarPTime, certificate_check, dichotomy
from .exact import HADAMARD, Mat2, QuadExt, as_rat
from .gadgets import contract, gadget
from .holant import SetSystem, SignatureGrid, cover_value, eval_brute, eval_dp, from_set_system, tractable_eval
from .planar import PlanarGraph, PlanarGrid, count_pm, planar_family_eval
from .signatures import DenseSig, SymSig3, classify_form

__all__ = [
    "__version__",
    "HADAMARD",
    "DenseSig",
    "Mat2",
    "PTime",
    "PlanarGraph",
    "PlanarGrid",
    "QuadExt",
    "SetSystem",
    "SharpPHard",
    "SharpPHardButPlanarPTime",
    "SignatureGrid",
    "SymSig3",
    "as_rat",
    "certificate_check",
    "classify_form",
    "contract",
    "count_pm",
    "cover_value",
    "dichotomy",
    "eval_brute",
    "eval_dp",
    "from_set_system",
    "gadget",
    "planar_family_eval",
    "tractable_eval",
]
