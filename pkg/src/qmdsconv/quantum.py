"""Quantum convolutional stabilizer parameters from Hermitian self-orthogonal codes.

A classical ``(n, (n - k)/2, gamma; mu)`` code ``V`` over GF(q^2) with
``V <= V^{perp H}`` yields a ``[(n, k, mu; gamma, d')]_q`` stabilizer code with
``d' = wt(V^{perp H} \\ V)``.  The two pipelines here start from a Hermitian
dual-containing GRS code, split its parity-check matrix, and certify that
the result meets the quantum convolutional Singleton-type bound.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Any

from .convcode import (
    ConvCode,
    DualBounds,
    SplitSpec,
    build_generator_poly,
    check_reduced_basic,
    conv_params,
    conv_self_orthogonal,
    free_distance_bounds_dual,
    split_parity,
)
from .errors import ConstructionError, InvalidCodeError, PreconditionError
from .grs import GrsCode, grs_parity_check, is_hermitian_dual_containing
from .linear import DEFAULT_BUDGET, kernel_code_distance


def mds_bound(n: int, k: int, gamma: int) -> int:
    """Largest free distance a pure ``[(n, k, mu; gamma, d')]_q`` code can have."""
    if not (n > k >= 0) or gamma < 0:
        raise ValueError(f"need n > k >= 0 and gamma >= 0, got n={n}, k={k}, gamma={gamma}")
    if (n - k) % 2:
        raise ValueError(f"n - k must be even, got {n - k}")
    return (n - k) // 2 * (2 * gamma // (n + k) + 1) + gamma + 1


@dataclasses.dataclass(frozen=True)
class QConvParams:
    """``[(n, k, mu; gamma, d')]_q`` with ``d'`` certified to lie in ``[d_low, d_high]``."""

    q: int
    n: int
    k: int
    mu: int
    gamma: int
    d_low: int
    d_high: int
    mds: bool = False
    pure_assumed: bool = True

    def __post_init__(self) -> None:
        if self.k < 0 or self.n - self.k < 0 or (self.n - self.k) % 2:
            raise InvalidCodeError(f"n - k must be even and nonnegative, got n={self.n}, k={self.k}")
        if self.d_low > self.d_high:
            raise InvalidCodeError(f"empty distance range [{self.d_low}, {self.d_high}]")
        if self.n > self.k and self.d_high > mds_bound(self.n, self.k, self.gamma):
            raise InvalidCodeError("distance exceeds the MDS bound")

    @property
    def exact(self) -> bool:
        return self.d_low == self.d_high

    @property
    def d_free(self) -> int | tuple[int, int]:
        return self.d_low if self.exact else (self.d_low, self.d_high)

    def bracket(self) -> str:
        d = str(self.d_low) if self.exact else f"{self.d_low}..{self.d_high}"
        return f"[({self.n},{self.k},{self.mu};{self.gamma},{d})]_{self.q}"

    def to_record(self) -> dict[str, Any]:
        return {
            "q": self.q, "n": self.n, "k": self.k, "mu": self.mu, "gamma": self.gamma,
            "d_low": self.d_low, "d_high": self.d_high, "exact": self.exact,
            "mds": self.mds, "pure_assumed": self.pure_assumed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def derive_quantum(c: ConvCode, bounds: DualBounds | None = None, budget: int = DEFAULT_BUDGET) -> QConvParams:
    """Stabilizer parameters of the code obtained from ``c``.

    ``bounds`` is the certified range for ``d'``; when omitted it is derived
    from ``c.blocks`` with enumerated block distances (so only small codes
    qualify).  The upper end is capped by :func:`mds_bound`, which assumes
    purity.
    """
    field = c.field
    if field.q is None:
        raise InvalidCodeError(f"GF({field.order}) is not of square order")
    if not conv_self_orthogonal(c):
        raise PreconditionError("V <= V^perpH", "generator is not Hermitian self-orthogonal")
    n, kq = c.n, c.n - 2 * c.k
    if kq < 0:
        raise PreconditionError("2 dim V <= n", f"dimension {c.k} too large for length {n}")
    if bounds is None:
        blocks = list(c.blocks) if c.blocks else [c.gen.coeff(0)]
        if len(blocks) == 1:
            d0 = kernel_code_distance(blocks[0], budget)
            bounds = DualBounds(d0, d0, 1)
        else:
            raise PreconditionError("explicit distance bounds",
                                    "split codes need the parent code distances; pass bounds")
    high = bounds.high
    if n > kq:
        high = min(high, mds_bound(n, kq, c.gamma))
    low = min(bounds.low, high)
    return QConvParams(field.q, n, kq, c.mu, c.gamma, low, high)


@dataclasses.dataclass(frozen=True)
class Construction:
    """Everything a construction pipeline produced, for reports and tests."""

    params: QConvParams
    code: GrsCode
    conv: ConvCode
    split: tuple[int, ...]
    bounds: DualBounds
    block_distances: tuple[int, ...]
    checks: dict[str, bool]
    translated_by: int = 0


def _zero_free(code: GrsCode) -> tuple[GrsCode, int]:
    """Re-describe ``code`` so that 0 is not an evaluation point, when possible."""
    if 0 not in code.a:
        return code, 0
    used = set(code.a)
    for beta in code.field.nonzero():
        if code.field.neg(beta) not in used:
            return code.translate(beta), beta
    raise ConstructionError(
        "every field element is an evaluation point; a lower block of the split would contain a zero column")


def _run(code: GrsCode, split: tuple[int, ...], expected: tuple[int, int, int, int],
         verify_budget: int) -> Construction:
    use, beta = _zero_free(code)
    h = grs_parity_check(use)
    blocks = split_parity(h, SplitSpec(split))
    gen = build_generator_poly(blocks)
    report = check_reduced_basic(gen)
    if not report:
        raise ConstructionError(f"split generator is not reduced basic: {report.detail}")
    conv = ConvCode(gen, tuple(blocks))
    if conv_params(conv) != expected:
        raise ConstructionError(f"convolutional parameters {conv_params(conv)} differ from {expected}")
    if not conv_self_orthogonal(conv):
        raise ConstructionError("split generator is not Hermitian self-orthogonal")
    # consecutive rows of a GRS parity check with nonzero multipliers: MDS blocks
    dists = tuple(t + 1 for t in split)
    checks = {"reduced_basic": True, "self_orthogonal": True}
    q2 = code.field.order
    if all(q2**t <= verify_budget for t in split):
        found = tuple(kernel_code_distance(b, verify_budget) for b in blocks)
        if found != dists:
            raise ConstructionError(f"block distances {found} differ from the GRS values {dists}")
        checks["block_distances_enumerated"] = True
    n, k = code.n, code.k
    bounds = free_distance_bounds_dual(conv, blocks, k + 1, n - k + 1, block_distances=dists)
    params = derive_quantum(conv, bounds)
    bound = mds_bound(params.n, params.k, params.gamma)
    if not (params.exact and params.d_low == n - k + 1 == bound):
        raise ConstructionError(f"distance range {params.d_low}..{params.d_high} does not close at "
                                f"n-k+1={n - k + 1} (bound {bound})")
    checks["bound_equality"] = True
    params = dataclasses.replace(params, mds=True)
    return Construction(params, use, conv, split, bounds, dists, checks, beta)


def _common_preconditions(code: GrsCode) -> None:
    if code.field.q is None:
        raise PreconditionError("field of order q^2")
    if not is_hermitian_dual_containing(code):
        raise PreconditionError("C^perpH <= C", "the GRS code is not Hermitian dual-containing")


def build_construction_one(code: GrsCode, t0: int, verify_budget: int = 1 << 16) -> Construction:
    """Memory-one construction: split ``H`` into ``t0`` and ``n-k-t0`` rows."""
    n, k = code.n, code.k
    s = n - k
    if not s <= 2 * t0:
        raise PreconditionError("(n-k)/2 <= t0", f"t0={t0}, n-k={s}")
    if not t0 < s:
        raise PreconditionError("t0 < n-k", f"t0={t0}, n-k={s}")
    if 2 * k == n:
        raise PreconditionError("k != n/2", f"k={k}, n={n}")
    _common_preconditions(code)
    return _run(code, (t0, s - t0), (n, t0, s - t0, 1), verify_budget)


def build_construction_two(code: GrsCode, verify_budget: int = 1 << 16) -> Construction:
    """Memory-two construction: split ``H`` into ``n-k-2``, 1 and 1 rows."""
    n, k = code.n, code.k
    if not 2 * k > n:
        raise PreconditionError("n/2 < k", f"k={k}, n={n}")
    if not k < n - 2:
        raise PreconditionError("k < n-2", f"k={k}, n={n}")
    _common_preconditions(code)
    s = n - k
    return _run(code, (s - 2, 1, 1), (n, s - 2, 2, 2), verify_budget)


def construct_one(code: GrsCode, t0: int) -> QConvParams:
    return build_construction_one(code, t0).params


def construct_two(code: GrsCode) -> QConvParams:
    return build_construction_two(code).params
