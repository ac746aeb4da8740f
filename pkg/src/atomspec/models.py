"""Named atom-space models shipped with the package."""
from __future__ import annotations

from . import tailspace as ts
from .errors import InputError
from .pid.modules import GENERIC, spec_model
from .pid.rings import ZZ, PolyRingModP
from .spectrum import AtomSpace, Support, TailView, tail_atom_space
from .symbolic import IndexSet, SymbolicSet

BUILTINS = ("grmod_kx", "goodearl", "spec_Z", "spec_F2x")


def kx_support() -> SymbolicSet:
    """Support of k[x] in the graded model: b and every s_j with j <= 0."""
    return SymbolicSet(frozenset(["b"]), IndexSet.tail(0, "leq"))


def builtin_space(name: str) -> AtomSpace:
    if name == "grmod_kx":
        return tail_atom_space(ts.builtin_model("grmod_kx"), {"k[x]": Support(kx_support(), noetherian=True)})
    if name == "goodearl":
        S = ts.builtin_model("goodearl")
        return tail_atom_space(S, {"B": Support(S.whole, noetherian=True)})
    if name in ("spec_Z", "spec_F2x"):
        R, label = (ZZ, "Z") if name == "spec_Z" else (PolyRingModP(2), "F2[x]")
        A = spec_model(R)
        generic = SymbolicSet(frozenset([GENERIC]))
        return AtomSpace(A.view, {label: Support(A.points, noetherian=True, aass=generic)})
    raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def complete(A: AtomSpace) -> AtomSpace:
    """Alexandroff completion; finite spaces are already Alexandroff."""
    if not isinstance(A.view, TailView):
        return A
    S = ts.alexandroff_completion(A.view.schema)
    return AtomSpace(TailView(S, A.view.carrier), A.supports)
