"""Matrix exponential by scaling and squaring with a Taylor kernel.

Only what the thermofield code needs: a dense ``expm`` of a (possibly
sparse) generator and the action ``expm(A) @ v`` on a vector. Both stop
the Taylor series once a term falls below ``tol`` relative to the partial
sum in the scaled norm.
"""
from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

__all__ = ["expm", "expm_action", "one_norm"]


def one_norm(A):
    if sp.issparse(A):
        return float(abs(A).sum(axis=0).max()) if A.nnz else 0.0
    return float(np.abs(A).sum(axis=0).max()) if A.size else 0.0


def _squarings(norm, target):
    return max(0, int(math.ceil(math.log2(norm / target)))) if norm > target else 0


def expm(A, tol=1e-14, max_terms=200):
    """Dense exp(A). ``A`` may be a scipy sparse matrix; the Taylor terms
    are then built with sparse-times-dense products and only the squarings
    are dense."""
    n = A.shape[0]
    norm = one_norm(A)
    squarings = _squarings(norm, 0.5)
    scale = 2.0**-squarings
    result = np.eye(n, dtype=np.result_type(A.dtype, float))
    term = result.copy()
    for k in range(1, max_terms + 1):
        term = (A @ term) * (scale / k)
        result += term
        if one_norm(term) <= tol * one_norm(result):
            break
    else:
        raise ArithmeticError("Taylor series for expm did not converge")
    for _ in range(squarings):
        result = result @ result
    return result


def expm_action(A, v, tol=1e-14, max_terms=200):
    """exp(A) @ v without forming exp(A); ``A`` dense or sparse."""
    norm = one_norm(A)
    steps = max(1, int(math.ceil(norm)))
    v = np.array(v, dtype=np.result_type(A.dtype, np.asarray(v).dtype, float))
    h = 1.0 / steps
    for _ in range(steps):
        out = v.copy()
        term = v
        for k in range(1, max_terms + 1):
            term = (A @ term) * (h / k)
            out += term
            if np.linalg.norm(term, 1) <= tol * np.linalg.norm(out, 1):
                break
        else:
            raise ArithmeticError("Taylor series for expm_action did not converge")
        v = out
    return v
