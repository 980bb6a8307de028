"""Verification suites: every module invariant as a reproducible check.

Each suite returns a list of :class:`CheckResult` so the command line,
the test suite and downstream harnesses all consume one implementation.
Exact checks report max_error 0.0 on success and carry the computed and
oracle renderings on failure; numeric checks report the measured error
against the stated tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exprio, fockspace, ordering as conv, phasexform
from .exactnum import ExactScalar, I, ONE
from .opalg import (
    OrderedPolynomial,
    Ordering,
    P,
    ProductNode,
    Q,
    commutator,
    poly_equal,
    rewrite_to_pq,
    rewrite_to_qp,
)

INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float = 0.0
    tolerance: float = 0.0
    detail: str = ""
    computed: str | None = None
    oracle: str | None = None

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
        }
        if self.detail:
            doc["detail"] = self.detail
        if self.computed is not None:
            doc["computed"] = self.computed
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        return doc


def _exact(name: str, computed: OrderedPolynomial, oracle: OrderedPolynomial) -> CheckResult:
    passed = computed.ordering is oracle.ordering and computed.terms == oracle.terms
    return CheckResult(
        name,
        passed,
        max_error=0.0 if passed else math.inf,
        computed=None if passed else exprio.render(computed),
        oracle=None if passed else exprio.render(oracle),
    )


def _numeric(name: str, error: float, tolerance: float, detail: str = "") -> CheckResult:
    passed = error <= tolerance
    return CheckResult(
        name,
        passed,
        float(error),
        tolerance,
        detail,
        computed=None if passed else f"max error {error:.6e}",
        oracle=None if passed else f"tolerance {tolerance:.0e}",
    )


def _qp_word(m: int, r: int) -> ProductNode:
    return ProductNode((Q,) * m + (P,) * r)


def _pq_word(m: int, r: int) -> ProductNode:
    return ProductNode((P,) * r + (Q,) * m)


# ---------------------------------------------------------------------------
# Symbolic suites
# ---------------------------------------------------------------------------


def suite_orderings(max_degree: int = 6) -> list[CheckResult]:
    """Closed-form conversions against brute-force rewriting oracles."""
    checks: list[CheckResult] = []
    span = range(max_degree + 1)

    worst_pq = worst_qp = None
    for m in span:
        for r in span:
            got = conv.qp_to_pq(m, r)
            want = rewrite_to_pq(_qp_word(m, r))
            if got.terms != want.terms and worst_pq is None:
                worst_pq = (m, r, got, want)
            got2 = conv.pq_to_qp(m, r)
            want2 = rewrite_to_qp(_pq_word(m, r))
            if got2.terms != want2.terms and worst_qp is None:
                worst_qp = (m, r, got2, want2)
    checks.append(
        CheckResult(
            f"qp_to_pq equals rewriting, m,r <= {max_degree}",
            worst_pq is None,
            0.0 if worst_pq is None else math.inf,
            computed=None if worst_pq is None else exprio.render(worst_pq[2]),
            oracle=None if worst_pq is None else exprio.render(worst_pq[3]),
            detail="" if worst_pq is None else f"first failure at {worst_pq[:2]}",
        )
    )
    checks.append(
        CheckResult(
            f"pq_to_qp equals rewriting, m,r <= {max_degree}",
            worst_qp is None,
            0.0 if worst_qp is None else math.inf,
            computed=None if worst_qp is None else exprio.render(worst_qp[2]),
            oracle=None if worst_qp is None else exprio.render(worst_qp[3]),
            detail="" if worst_qp is None else f"first failure at {worst_qp[:2]}",
        )
    )

    bad_sym = None
    for m in span:
        for r in span:
            sym = conv.weyl_symmetrization(m, r)
            if conv.weyl_to_pq(m, r).terms != rewrite_to_pq(sym).terms:
                bad_sym = (m, r)
                break
            if conv.weyl_to_qp(m, r).terms != rewrite_to_qp(sym).terms:
                bad_sym = (m, r)
                break
        if bad_sym:
            break
    checks.append(
        CheckResult(
            f"weyl_to_pq/weyl_to_qp equal symmetrized-word rewriting, m,r <= {max_degree}",
            bad_sym is None,
            0.0 if bad_sym is None else math.inf,
            detail="" if bad_sym is None else f"first failure at {bad_sym}",
        )
    )

    bad_weyl = None
    for m in span:
        for r in span:
            # Weyl image of the ordered words, checked through rewriting.
            via = conv.convert(conv.qp_to_weyl(m, r), Ordering.PQ)
            if via.terms != rewrite_to_pq(_qp_word(m, r)).terms:
                bad_weyl = ("qp_to_weyl", m, r)
                break
            via2 = conv.convert(conv.pq_to_weyl(m, r), Ordering.QP)
            if via2.terms != rewrite_to_qp(_pq_word(m, r)).terms:
                bad_weyl = ("pq_to_weyl", m, r)
                break
        if bad_weyl:
            break
    checks.append(
        CheckResult(
            f"qp_to_weyl/pq_to_weyl invert through rewriting, m,r <= {max_degree}",
            bad_weyl is None,
            0.0 if bad_weyl is None else math.inf,
            detail="" if bad_weyl is None else f"first failure at {bad_weyl}",
        )
    )

    tags = (Ordering.PQ, Ordering.QP, Ordering.WEYL)
    bad_rt = None
    for m in span:
        for r in span:
            for t1 in tags:
                start = OrderedPolynomial.monomial(t1, m, r)
                for t2 in tags:
                    back = conv.convert(conv.convert(start, t2), t1)
                    if back.terms != start.terms:
                        bad_rt = (t1.value, t2.value, m, r)
    checks.append(
        CheckResult(
            f"round-trip identity over all tag pairs, m,r <= {max_degree}",
            bad_rt is None,
            0.0 if bad_rt is None else math.inf,
            detail="" if bad_rt is None else f"failure at {bad_rt}",
        )
    )

    bad_adj = None
    adj_span = range(min(max_degree, 5) + 1)
    for m in adj_span:
        for r in adj_span:
            adj = conv.qp_to_pq(m, r).adjoint()
            if adj.terms != conv.pq_to_qp(m, r).terms:
                bad_adj = (m, r)
    checks.append(
        CheckResult(
            "adjoint symmetry between qp_to_pq and pq_to_qp, m,r <= 5",
            bad_adj is None,
            0.0 if bad_adj is None else math.inf,
            detail="" if bad_adj is None else f"failure at {bad_adj}",
        )
    )
    return checks


def suite_commutators(max_degree: int = 6) -> list[CheckResult]:
    """Closed-form commutators against brute force, in both orderings."""
    checks: list[CheckResult] = []
    checks.append(
        _exact(
            "[Q, P] = i",
            conv.commutator_closed_form(1, 1, Ordering.PQ),
            OrderedPolynomial.from_terms(Ordering.PQ, [((0, 0), I)]),
        )
    )
    bad = None
    for m in range(max_degree + 1):
        for r in range(max_degree + 1):
            brute = commutator(Q**m, P**r)
            closed_pq = conv.commutator_closed_form(m, r, Ordering.PQ)
            closed_qp = conv.commutator_closed_form(m, r, Ordering.QP)
            if closed_pq.terms != brute.terms:
                bad = ("pq", m, r)
            if not poly_equal(closed_qp, brute):
                bad = ("qp", m, r)
            if not poly_equal(closed_pq, closed_qp):
                bad = ("pq-vs-qp", m, r)
    checks.append(
        CheckResult(
            f"closed-form commutators equal [Q^m, P^r] by rewriting, m,r <= {max_degree}",
            bad is None,
            0.0 if bad is None else math.inf,
            detail="" if bad is None else f"failure at {bad}",
        )
    )
    bad_pow = None
    for n in range(min(max_degree, 8) + 1):
        oracle_expr = ProductNode(tuple([P + Q]) * n) if n else None
        for target, rewriter in (
            (Ordering.PQ, rewrite_to_pq),
            (Ordering.QP, rewrite_to_qp),
        ):
            closed = conv.p_plus_q_power(n, target)
            want = (
                rewriter(oracle_expr)
                if oracle_expr is not None
                else OrderedPolynomial.from_terms(target, [((0, 0), ONE)])
            )
            if closed.terms != want.terms:
                bad_pow = (target.value, n)
    checks.append(
        CheckResult(
            f"(P+Q)^n expansions equal rewriting, n <= {min(max_degree, 8)}",
            bad_pow is None,
            0.0 if bad_pow is None else math.inf,
            detail="" if bad_pow is None else f"failure at {bad_pow}",
        )
    )
    return checks


def suite_hermite(max_degree: int = 8) -> list[CheckResult]:
    """Two-variable Hermite identities behind the symbolic transforms."""
    checks: list[CheckResult] = []
    checks.append(
        CheckResult(
            "H[1,1](t,s) = ts - 1",
            conv.hermite_two_var(1, 1).terms
            == {(1, 1): ONE, (0, 0): ExactScalar.from_int(-1)},
        )
    )
    checks.append(
        CheckResult(
            "H[2,1](t,s) = t^2 s - 2t",
            conv.hermite_two_var(2, 1).terms
            == {(2, 1): ONE, (1, 0): ExactScalar.from_int(-2)},
        )
    )
    span = range(max_degree + 1)
    bad = None
    for m in span:
        for r in span:
            if (
                phasexform.derivative_representation(m, r).terms
                != phasexform.monomial_forward(m, r).terms
            ):
                bad = (m, r)
    checks.append(
        CheckResult(
            f"derivative representation equals forward symbol, m,r <= {max_degree}",
            bad is None,
            0.0 if bad is None else math.inf,
            detail="" if bad is None else f"failure at {bad}",
        )
    )
    bad_inv = None
    for m in span:
        for r in span:
            if phasexform.monomial_inverse(m, r).terms != {(m, r): ONE}:
                bad_inv = (m, r)
    checks.append(
        CheckResult(
            f"inverse symbol map recovers bare monomials, m,r <= {max_degree}",
            bad_inv is None,
            0.0 if bad_inv is None else math.inf,
            detail="" if bad_inv is None else f"failure at {bad_inv}",
        )
    )
    bad_lit = None
    lit_span = range(min(max_degree, 6) + 1)
    for m in lit_span:
        for r in lit_span:
            reduced = {
                (k.m, k.r): c for k, c in conv.qp_to_weyl(m, r).terms.items()
            }
            if conv._weyl_image_via_hermite(m, r, False).terms != reduced:
                bad_lit = ("qp", m, r)
            reduced2 = {
                (k.m, k.r): c for k, c in conv.pq_to_weyl(m, r).terms.items()
            }
            if conv._weyl_image_via_hermite(m, r, True).terms != reduced2:
                bad_lit = ("pq", m, r)
    checks.append(
        CheckResult(
            "scaled-Hermite route equals reduced Weyl coefficients, m,r <= 6",
            bad_lit is None,
            0.0 if bad_lit is None else math.inf,
            detail="" if bad_lit is None else f"failure at {bad_lit}",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# Numeric suites
# ---------------------------------------------------------------------------


def suite_wigner(dim: int = 64) -> list[CheckResult]:
    """Marginals, quantization quadratures and Wigner functions."""
    checks: list[CheckResult] = []
    block = 8

    worst = 0.0
    origin_entry = None
    for axis in ("q", "p"):
        for value in (-2.0, -1.0, 0.0, 1.0, 2.0):
            numeric, analytic = fockspace.marginal_check(
                axis, value, dim, block=block
            )
            err = float(np.abs(numeric.data - analytic.data).max())
            worst = max(worst, err)
            if axis == "q" and value == 0.0:
                origin_entry = float(numeric.data[0, 0].real)
    checks.append(
        _numeric(
            "kernel marginals match projector matrices on the 8x8 block",
            worst,
            1e-6,
            detail="x in {-2..2}, both axes",
        )
    )
    checks.append(
        _numeric(
            "q-marginal (0,0) entry at x=0 equals 1/sqrt(pi)",
            abs(origin_entry - INV_SQRT_PI),
            1e-6,
            detail=f"value {origin_entry:.9f}",
        )
    )

    quads = fockspace.monomial_quantization_quadrature(4, block=block)
    worst_q = 0.0
    for (m, r), got in quads.items():
        ref = fockspace.evaluate(conv.weyl_to_pq(m, r), dim).data[:block, :block]
        worst_q = max(worst_q, float(np.abs(got - ref).max()))
    checks.append(
        _numeric(
            "monomial quadratures match symmetrized-monomial matrices, m+r <= 4",
            worst_q,
            1e-3,
            detail="grid [-7,7]^2, step 0.02",
        )
    )

    worst_s = 0.0
    for m in range(4):
        for r in range(4 - m):
            symbol = {
                (k.m, k.r): c.to_complex()
                for k, c in conv.pq_to_weyl(m, r).terms.items()
            }
            got = fockspace.symbol_quantization(symbol, quads)
            ref = fockspace.evaluate(
                OrderedPolynomial.monomial(Ordering.PQ, m, r), dim
            ).data[:block, :block]
            worst_s = max(worst_s, float(np.abs(got - ref).max()))
    checks.append(
        _numeric(
            "smeared-kernel transform reproduces ordered words, m+r <= 3",
            worst_s,
            1e-3,
            detail="quantizing the P-Q Weyl symbols",
        )
    )

    axis = np.linspace(-3.0, 3.0, 25)
    qg, pg = np.meshgrid(axis, axis, indexing="ij")
    worst_w = 0.0
    worst_imag = 0.0
    for beta in (0.0, 1.0, 1.0j, 0.6 + 0.8j, 0.3 - 0.4j):
        state = fockspace.coherent_state(beta, dim)
        rho = np.outer(state, state.conj())
        w = fockspace.wigner_function(rho, axis, axis)
        qb, pb = math.sqrt(2.0) * beta.real, math.sqrt(2.0) * beta.imag
        exact = np.exp(-((qg - qb) ** 2) - (pg - pb) ** 2) / math.pi
        worst_w = max(worst_w, float(np.abs(w - exact).max()))
        worst_imag = max(worst_imag, float(np.abs(w.imag).max()))
    checks.append(
        _numeric(
            "coherent-state Wigner functions are the shifted Gaussians, |beta| <= 1",
            worst_w,
            1e-6,
            detail="|q|,|p| <= 3",
        )
    )
    checks.append(
        _numeric(
            "Wigner function is real for Hermitian states", worst_imag, 1e-8
        )
    )

    step = 0.05
    count = int(round(12.0 / step))
    grid = -6.0 + (np.arange(count) + 0.5) * step
    state = fockspace.coherent_state(0.6 + 0.8j, dim)
    rho = np.outer(state, state.conj())
    w = fockspace.wigner_function(rho, grid, grid)
    total = float(w.real.sum() * step * step)
    checks.append(
        _numeric(
            "Wigner function integrates to one",
            abs(total - 1.0),
            1e-4,
            detail=f"quadrature on [-6,6]^2 step {step}, value {total:.6f}",
        )
    )
    return checks


def suite_transform() -> list[CheckResult]:
    """Grid transform: Gaussian pair, round trip, norm identity, linearity."""
    checks: list[CheckResult] = []
    gauss = phasexform.SampledField.from_function(
        lambda qg, pg: np.exp(-(pg**2) - qg**2)
    )
    forward = phasexform.forward_transform(gauss)
    qg, pg = np.meshgrid(gauss.q_axis, gauss.p_axis, indexing="ij")
    exact = (
        np.exp(-(qg**2 + pg**2) / 2.0 + 1j * pg * qg) / math.sqrt(2.0)
    )
    checks.append(
        _numeric(
            "Gaussian transforms to the chirped half-width Gaussian",
            float(np.abs(forward.values - exact).max()),
            1e-6,
            detail="[-8,8]^2, 400x400",
        )
    )
    centered = phasexform.SampledField.from_function(
        lambda qg, pg: np.exp(-(pg**2) - qg**2), nq=401, np_=401
    )
    centered_fwd = phasexform.forward_transform(centered)
    iq = int(np.argmin(np.abs(centered.q_axis)))
    ip = int(np.argmin(np.abs(centered.p_axis)))
    checks.append(
        _numeric(
            "transform of the Gaussian at the origin equals 1/sqrt(2)",
            abs(centered_fwd.values[iq, ip] - 1.0 / math.sqrt(2.0)),
            1e-6,
        )
    )

    back = phasexform.inverse_transform(forward)
    nq, np_ = gauss.nq, gauss.np_
    qs = slice(nq // 4, 3 * nq // 4)
    ps = slice(np_ // 4, 3 * np_ // 4)
    checks.append(
        _numeric(
            "inverse(forward(h)) returns h on the central half grid",
            float(np.abs(back.values - gauss.values)[qs, ps].max()),
            1e-5,
        )
    )

    lhs, rhs = phasexform.parseval_check(gauss)
    checks.append(
        _numeric("norm identity, analytic side", abs(lhs - 0.5), 1e-8)
    )
    checks.append(
        _numeric("norm identity, transform side", abs(rhs - 0.5), 1e-5)
    )
    shifted = phasexform.SampledField.from_function(
        lambda qg, pg: np.exp(-((pg - 1.0) ** 2) - (qg + 1.0) ** 2)
    )
    lhs_s, rhs_s = phasexform.parseval_check(shifted)
    checks.append(
        _numeric(
            "norm identity for a shifted Gaussian",
            max(abs(lhs_s - 0.5), abs(rhs_s - 0.5)),
            1e-5,
        )
    )

    other = phasexform.SampledField.from_function(
        lambda qg, pg: (qg + 1j * pg) * np.exp(-(pg**2) - qg**2)
    )
    combo = phasexform.SampledField(
        gauss.q_min,
        gauss.q_max,
        gauss.p_min,
        gauss.p_max,
        2.0 * gauss.values - 0.5j * other.values,
    )
    lin = phasexform.forward_transform(combo).values - (
        2.0 * phasexform.forward_transform(gauss).values
        - 0.5j * phasexform.forward_transform(other).values
    )
    checks.append(
        _numeric("transform is linear", float(np.abs(lin).max()), 1e-12)
    )
    return checks


SUITES = {
    "orderings": suite_orderings,
    "commutators": suite_commutators,
    "hermite": suite_hermite,
    "wigner": suite_wigner,
    "transform": suite_transform,
}


def run_suite(
    name: str, max_degree: int | None = None, dim: int = 64
) -> list[CheckResult]:
    if name == "orderings":
        return suite_orderings(6 if max_degree is None else max_degree)
    if name == "commutators":
        return suite_commutators(6 if max_degree is None else max_degree)
    if name == "hermite":
        return suite_hermite(8 if max_degree is None else max_degree)
    if name == "wigner":
        return suite_wigner(dim)
    if name == "transform":
        return suite_transform()
    raise ValueError(f"unknown suite {name!r}")
