"""Exact calculus of regular holonomic distribution germs on C.

Scalars are exact strings ("-1/2", "3*tau", "1/2+1*i"); tau stands for 2*pi*i.
Modules and pairings are dicts (or JSON text) in the schema used by the CLI.
"""

import json as _json

from ._holodist import (  # noqa: F401
    Germ,
    KernelError,
    barlet_ledger,
    detect_tangling,
    jordan_type,
    make_u,
    monodromy_gr_dims,
    parse_germ,
    predicted_order,
    residue_vs_L,
    selftest,
    stabilization_threshold,
)
from . import _holodist


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def module_check(module):
    """Axiom violations of a module (empty list when valid)."""
    return _holodist._module_check(_text(module))


def module_dual(module):
    """Hermitian dual of a module, as a dict."""
    return _json.loads(_holodist._module_dual(_text(module)))


def psi_S(pairing, alpha):
    """Nearby-cycle pairing matrix at alpha (entries as strings)."""
    return _holodist._psi_S(_text(pairing), str(alpha))


def phi_S(pairing):
    """Vanishing-cycle pairing matrix."""
    return _holodist._phi_S(_text(pairing))


def psi_S_via_Malphap(pairing, alpha, p):
    """The same matrix computed through the extended modules M_{alpha,p}."""
    return _holodist._psi_S_via_Malphap(_text(pairing), str(alpha), int(p))


def check_propS(pairing):
    """The four compatibilities as (name, ok, detail) triples."""
    return _holodist._check_propS(_text(pairing))


def check_cor(pairing):
    """Both sides of the nondegeneracy equivalence."""
    return _holodist._check_cor(_text(pairing))


__all__ = [
    "Germ", "KernelError", "barlet_ledger", "check_cor", "check_propS", "detect_tangling", "jordan_type",
    "make_u", "module_check", "module_dual", "monodromy_gr_dims", "parse_germ", "phi_S", "predicted_order",
    "psi_S", "psi_S_via_Malphap", "residue_vs_L", "selftest", "stabilization_threshold",
]
