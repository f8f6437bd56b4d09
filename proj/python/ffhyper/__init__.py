"""Exact hypergeometric functions over finite fields and a verifier for identities among them.

Characters are given by index j (chi_j(g) = exp(2 pi i j / (q - 1)) for the field's
generator g); field elements by their integer index in [0, q).
"""

import json

from ._core import Cyclotomic, Field, VerifierError, identities, run_cli
from . import _core

__all__ = ["Cyclotomic", "Field", "VerifierError", "identities", "run_cli", "field", "check", "run_suite"]


def field(q, generator_rank=0):
    """Field of order q (a prime power up to 64)."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, n = 0, q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return Field(p, r, generator_rank)


def _as_field(f):
    return field(f) if isinstance(f, int) else f


def check(f, identity, mode="exhaustive", samples=200, seed=0, backend="exact", max_arity=3, budget=10_000_000):
    """Verifies one identity over one field; returns the report as a dict."""
    return json.loads(_core._check(_as_field(f), identity, mode, samples, seed, backend, max_arity, budget))


def run_suite(fields, ids=None, mode="exhaustive", samples=200, seed=0, backend="exact", max_arity=3,
              budget=10_000_000, threads=0):
    """Verifies identities (all by default) over fields; returns {'reports': [...], 'digest': str}."""
    if ids is None:
        ids = [d["id"] for d in identities()]
    fs = [_as_field(f) for f in fields]
    return json.loads(_core._suite(fs, list(ids), mode, samples, seed, backend, max_arity, budget, threads))
