"""JSON encoding of algebras, elements, morphisms, states and reports.

Complex numbers are ``[re, im]`` pairs everywhere. Schemas::

    algebra  = {"blocks": [n_1, ...]}
    element  = [block_matrix, ...]
    morphism = {"source": algebra, "target": algebra, "matrix": [[z, ...], ...]}
    state    = {"algebra": algebra, "coeffs": [z, ...]}
             | {"algebra": algebra, "density": [[z, ...], ...]}   (single block)
"""
import numbers

import numpy as np

from .algebra import Algebra, Element, StarMorphism
from .exceptions import FdgnsError, SchemaError
from .states import DensityMatrix, State, state_from_density_matrix


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def array_to_json(arr):
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 0:
        return complex_to_json(arr)
    return [array_to_json(x) for x in arr]


def parse_complex(value, path):
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, numbers.Real) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise SchemaError(f"expected a complex number [re, im], got {value!r}", path)


def parse_vector(value, path):
    if not isinstance(value, list):
        raise SchemaError("expected a list of complex numbers", path)
    return np.array([parse_complex(v, f"{path}[{i}]") for i, v in enumerate(value)], dtype=complex)


def parse_matrix(value, path):
    if not isinstance(value, list) or not value:
        raise SchemaError("expected a non-empty list of rows", path)
    rows = [parse_vector(row, f"{path}[{i}]") for i, row in enumerate(value)]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("rows have different lengths", path)
    return np.array(rows)


def _require(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", path)
    return obj[key]


def algebra_to_json(A):
    return {"blocks": list(A.block_dims)}


def algebra_from_json(data, path="algebra"):
    blocks = _require(data, "blocks", path)
    if not isinstance(blocks, list) or not blocks:
        raise SchemaError("expected a non-empty list of block sizes", f"{path}.blocks")
    for i, n in enumerate(blocks):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"block size must be a positive integer, got {n!r}", f"{path}.blocks[{i}]")
    return Algebra(tuple(blocks))


def element_to_json(a):
    return [array_to_json(b) for b in a.blocks]


def element_from_json(algebra, data, path="element"):
    if not isinstance(data, list) or len(data) != len(algebra.block_dims):
        raise SchemaError(f"expected {len(algebra.block_dims)} block matrices", path)
    blocks = [parse_matrix(b, f"{path}[{i}]") for i, b in enumerate(data)]
    try:
        return Element(algebra, blocks)
    except FdgnsError as exc:
        raise SchemaError(str(exc), path) from None


def morphism_to_json(f):
    return {
        "source": algebra_to_json(f.source),
        "target": algebra_to_json(f.target),
        "matrix": array_to_json(f.matrix),
    }


def morphism_from_json(data, path="morphism"):
    source = algebra_from_json(_require(data, "source", path), f"{path}.source")
    target = algebra_from_json(_require(data, "target", path), f"{path}.target")
    matrix = parse_matrix(_require(data, "matrix", path), f"{path}.matrix")
    try:
        return StarMorphism(source, target, matrix)
    except FdgnsError as exc:
        raise SchemaError(str(exc), f"{path}.matrix") from None


def state_to_json(omega):
    return {"algebra": algebra_to_json(omega.algebra), "coeffs": array_to_json(omega.coeffs)}


def state_from_json(data, path="state"):
    """Parse a state; a bare ``{"blocks": ..., "coeffs": ...}`` object is accepted too."""
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path)
    if "algebra" in data:
        algebra = algebra_from_json(data["algebra"], f"{path}.algebra")
    else:
        algebra = algebra_from_json(data, path)
    if "coeffs" in data:
        coeffs = parse_vector(data["coeffs"], f"{path}.coeffs")
        if len(coeffs) != algebra.dim:
            raise SchemaError(f"expected {algebra.dim} coefficients, got {len(coeffs)}", f"{path}.coeffs")
        return State(algebra, coeffs)
    if "density" in data:
        if not algebra.is_single_block:
            raise SchemaError("density input is only supported for single-block algebras", f"{path}.density")
        rho = parse_matrix(data["density"], f"{path}.density")
        n = algebra.block_dims[0]
        if rho.shape != (n, n):
            raise SchemaError(f"expected a {n}x{n} density matrix", f"{path}.density")
        try:
            return state_from_density_matrix(DensityMatrix(rho))
        except FdgnsError as exc:
            raise SchemaError(str(exc), f"{path}.density") from None
    raise SchemaError("state needs 'coeffs' or 'density'", path)


def certificate_to_json(cert):
    return cert.to_dict()


def intertwiner_to_json(L):
    return {"L": array_to_json(L.L), "certificates": L.certificate.to_dict()}


def gns_to_json(g):
    """Report for a :class:`~fdgns.gns.GnsRep`."""
    return {
        "quotient_dim": g.quotient_dim,
        "null_dim": g.null_dim,
        "embed": array_to_json(g.embed),
        "pi": {str(k): array_to_json(p) for k, p in enumerate(g.rep.pi)},
        "omega": array_to_json(g.rep.omega_vec),
    }
