"""
Expansion Oracle Module

Brute-force sum-product expansion of circuits and degree bounds.

Key Features:
- expand_oracle: exact monomial -> coefficient (mod p) tables, bottom-up
- has_p_monomial_oracle: degree-k p-monomial lookup with a deterministic witness
- degree_bound / y_degree_bound: interval bounds over gates
"""

from typing import Dict, Optional, Tuple

from ..algebra.field import as_prime
from ..utils.config import settings
from ..utils.errors import ResourceLimitError
from ..utils.logger import circuit_logger as logger
from .models import Add, AugmentedCircuit, Circuit, Const, ExpansionTable, Input, Monomial, Mul

Poly = Dict[Monomial, int]


def _check_cap(poly: Poly, cap: int, node: int) -> None:
    if len(poly) > cap:
        raise ResourceLimitError(f"expansion exceeds cap of {cap} monomials at node {node}")


def _poly_add(a: Poly, b: Poly, p: int) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_mul(a: Poly, b: Poly, p: int, cap: int, node: int) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma * mb
            v = (out.get(m, 0) + ca * cb) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        _check_cap(out, cap, node)
    return out


def expand_oracle(c: Circuit, p, cap: Optional[int] = None) -> ExpansionTable:
    """
    Exact expansion of the output polynomial with coefficients mod p.

    Raises:
        ResourceLimitError: when an intermediate table exceeds cap monomials
    """
    p = as_prime(p)
    cap = settings.ORACLE_CAP if cap is None else cap
    output = c.require_output()
    reachable = c.reachable
    tables: Dict[int, Poly] = {}
    for i, gate in enumerate(c.nodes):
        if not reachable[i]:
            continue
        if isinstance(gate, Input):
            poly = {Monomial.of(gate.var): 1}
        elif isinstance(gate, Const):
            poly = {Monomial(): gate.value % p} if gate.value % p else {}
        elif isinstance(gate, Add):
            poly = {}
            for child in gate.children:
                poly = _poly_add(poly, tables[child], p)
        elif isinstance(gate, Mul):
            poly = _poly_mul(tables[gate.left], tables[gate.right], p, cap, i)
        else:
            raise TypeError(f"unknown gate {gate!r}")
        _check_cap(poly, cap, i)
        tables[i] = poly
    result = ExpansionTable(tables[output], p)
    logger.debug(f"oracle expansion: {len(result)} monomials mod {p}")
    return result


def has_p_monomial_oracle(tbl: ExpansionTable, p, k: int) -> Tuple[bool, Optional[Monomial]]:
    """True with the smallest witness when some entry has degree k and every exponent < p"""
    p = as_prime(p)
    witnesses = sorted(m for m in tbl.entries if m.degree == k and m.is_c_monomial(p))
    if witnesses:
        return True, witnesses[0]
    return False, None


def degree_bound(c: Circuit) -> int:
    """Upper bound on the output degree (Add: max, Mul: sum, Input: 1, Const: 0)"""
    output = c.require_output()
    bounds = []
    for gate in c.nodes:
        if isinstance(gate, Input):
            bounds.append(1)
        elif isinstance(gate, Const):
            bounds.append(0)
        elif isinstance(gate, Add):
            bounds.append(max(bounds[ch] for ch in gate.children))
        else:
            bounds.append(bounds[gate.left] + bounds[gate.right])
    return bounds[output]


def y_degree_bound(ac: AugmentedCircuit) -> int:
    """Upper bound on the total tag degree of the augmented output"""
    c = ac.base
    output = c.require_output()
    bounds = []
    for i, gate in enumerate(c.nodes):
        if isinstance(gate, (Input, Const)):
            value = 0
        elif isinstance(gate, Add):
            value = max(bounds[ch] for ch in gate.children)
        else:
            value = bounds[gate.left] + bounds[gate.right]
        if i in ac.y_of_node:
            value += 1
        bounds.append(value)
    return bounds[output]
