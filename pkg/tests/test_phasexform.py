import math
import warnings

import numpy as np
import pytest

from weylkit import phasexform as px
from weylkit.exactnum import ExactScalar, I, ONE

I_HALF = I * ExactScalar.rational(1, 2)


def gaussian_field(**kwargs):
    return px.SampledField.from_function(
        lambda qg, pg: np.exp(-(pg**2) - qg**2), **kwargs
    )


def exact_gaussian_image(field):
    qg, pg = np.meshgrid(field.q_axis, field.p_axis, indexing="ij")
    return np.exp(-(qg**2 + pg**2) / 2.0 + 1j * pg * qg) / math.sqrt(2.0)


def test_forward_gaussian_pointwise():
    field = gaussian_field()
    image = px.forward_transform(field)
    assert image.reliable
    assert np.abs(image.values - exact_gaussian_image(field)).max() < 1e-6


def test_forward_gaussian_origin_and_unit_values():
    # An odd sample count puts cell centers exactly on the integer
    # lattice, so the closed-form spot values apply literally.
    field = gaussian_field(nq=401, np_=401)
    image = px.forward_transform(field)
    iq = int(np.argmin(np.abs(field.q_axis)))
    ip = int(np.argmin(np.abs(field.p_axis)))
    assert abs(field.q_axis[iq]) < 1e-12 and abs(field.p_axis[ip]) < 1e-12
    assert abs(image.values[iq, ip] - 1.0 / math.sqrt(2.0)) < 1e-6
    iq1 = int(np.argmin(np.abs(field.q_axis - 1.0)))
    ip1 = int(np.argmin(np.abs(field.p_axis - 1.0)))
    q1, p1 = field.q_axis[iq1], field.p_axis[ip1]
    want = math.exp(-(q1**2 + p1**2) / 2.0) * np.exp(1j * p1 * q1) / math.sqrt(2.0)
    assert abs(image.values[iq1, ip1] - want) < 1e-6


@pytest.mark.parametrize(
    "func",
    [
        lambda qg, pg: np.exp(-(pg**2) - qg**2),
        lambda qg, pg: (qg**2 - 1j * pg) * np.exp(-(pg**2) - qg**2),
        lambda qg, pg: qg * pg * np.exp(-((pg - 0.5) ** 2) - (qg + 0.5) ** 2),
    ],
    ids=["gaussian", "poly-gaussian", "shifted-poly-gaussian"],
)
def test_round_trip_on_central_half(func):
    field = px.SampledField.from_function(func)
    back = px.inverse_transform(px.forward_transform(field))
    nq, np_ = field.nq, field.np_
    qs = slice(nq // 4, 3 * nq // 4)
    ps = slice(np_ // 4, 3 * np_ // 4)
    assert np.abs((back.values - field.values)[qs, ps]).max() < 1e-5


def test_inverse_of_exact_gaussian_image():
    field = gaussian_field()
    image = px.SampledField(
        field.q_min,
        field.q_max,
        field.p_min,
        field.p_max,
        exact_gaussian_image(field),
    )
    recovered = px.inverse_transform(image)
    assert np.abs(recovered.values - field.values).max() < 1e-5


def test_linearity():
    f1 = gaussian_field()
    f2 = px.SampledField.from_function(
        lambda qg, pg: (qg - 1j * pg) * np.exp(-(pg**2) - qg**2)
    )
    combo = px.SampledField(
        f1.q_min, f1.q_max, f1.p_min, f1.p_max,
        1.5 * f1.values + (2.0 - 1.0j) * f2.values,
    )
    direct = px.forward_transform(combo).values
    split = (
        1.5 * px.forward_transform(f1).values
        + (2.0 - 1.0j) * px.forward_transform(f2).values
    )
    assert np.abs(direct - split).max() < 1e-12


def test_boundary_decay_warning():
    flat = px.SampledField.from_function(lambda qg, pg: np.ones_like(qg))
    with pytest.warns(px.GridDomainWarning):
        out = px.forward_transform(flat)
    assert not out.reliable


def test_parseval_examples():
    lhs, rhs = px.parseval_check(gaussian_field())
    assert abs(lhs - 0.5) < 1e-8
    assert abs(rhs - 0.5) < 1e-5
    zero = px.SampledField.from_function(lambda qg, pg: np.zeros_like(qg))
    assert px.parseval_check(zero) == (0.0, 0.0)
    shifted = px.SampledField.from_function(
        lambda qg, pg: np.exp(-((pg - 1.0) ** 2) - (qg + 1.0) ** 2)
    )
    lhs_s, rhs_s = px.parseval_check(shifted)
    assert abs(lhs_s - 0.5) < 1e-5
    assert abs(rhs_s - 0.5) < 1e-5


def test_monomial_forward_examples():
    assert px.monomial_forward(0, 0).terms == {(0, 0): ONE}
    assert px.monomial_forward(1, 1).terms == {(1, 1): ONE, (0, 0): I_HALF}
    assert px.monomial_forward(2, 0).terms == {(2, 0): ONE}


def test_monomial_inverse_examples():
    assert px.monomial_inverse(1, 1).terms == {(1, 1): ONE}
    assert px.monomial_inverse(3, 2).terms == {(3, 2): ONE}
    assert px.monomial_inverse(0, 0).terms == {(0, 0): ONE}


def test_derivative_representation_examples():
    assert px.derivative_representation(0, 0).terms == {(0, 0): ONE}
    # single derivatives: one s-derivative leaves t, one t-derivative
    # leaves s, each after dividing out the raw -2i factor
    assert px.derivative_representation(1, 0).terms == {(1, 0): ONE}
    assert px.derivative_representation(0, 1).terms == {(0, 1): ONE}
    assert px.derivative_representation(1, 1).terms == {
        (1, 1): ONE,
        (0, 0): I_HALF,
    }


@pytest.mark.parametrize("m", range(9))
@pytest.mark.parametrize("r", range(9))
def test_derivative_representation_equals_forward(m, r):
    assert (
        px.derivative_representation(m, r).terms
        == px.monomial_forward(m, r).terms
    )


def test_regularized_monomials_extrapolate_to_symbol():
    """Gaussian-regularized monomials, Richardson-extrapolated in the
    regularization strength, reproduce the exact symbols.

    The oscillatory quadrature needs the grid to resolve the kernel at
    the boundary (samples > 4 L^2 / pi), hence the large dense grid.
    """
    half = 40.0
    n = 1600
    shell = px.SampledField(
        -half, half, -half, half, np.zeros((n, n), dtype=complex)
    )
    qg, pg = np.meshgrid(shell.q_axis, shell.p_axis, indexing="ij")
    t_idx = [int(np.argmin(np.abs(shell.q_axis - t))) for t in
             (-1.0, -0.5, 0.0, 0.5, 1.0)]
    s_idx = [int(np.argmin(np.abs(shell.p_axis - s))) for s in
             (-1.0, -0.5, 0.0, 0.5, 1.0)]
    t_pts = shell.q_axis[t_idx]
    s_pts = shell.p_axis[s_idx]
    worst = 0.0
    for m in range(4):
        for r in range(4 - m):
            images = {}
            for eps in (0.02, 0.01, 0.005):
                values = qg**m * pg**r * np.exp(-eps * (qg**2 + pg**2))
                field = px.SampledField(
                    -half, half, -half, half, values
                )
                with warnings.catch_warnings():
                    # weak regularization decays slowly; the boundary
                    # warning is expected and Richardson absorbs it
                    warnings.simplefilter("ignore", px.GridDomainWarning)
                    image = px.forward_transform(field)
                images[eps] = image.values[np.ix_(t_idx, s_idx)]
            first = 2.0 * images[0.01] - images[0.02]
            second = 2.0 * images[0.005] - images[0.01]
            extrapolated = (4.0 * second - first) / 3.0
            symbol = px.monomial_forward(m, r)
            tt, ss = np.meshgrid(t_pts, s_pts, indexing="ij")
            exact = np.zeros_like(extrapolated)
            for (i, j), coeff in symbol.terms.items():
                exact += coeff.to_complex() * tt**i * ss**j
            worst = max(worst, float(np.abs(extrapolated - exact).max()))
    assert worst < 1e-2, worst


def test_sampled_field_validation():
    with pytest.raises(ValueError):
        px.SampledField(0.0, 1.0, 0.0, 1.0, np.zeros((1, 4), dtype=complex))
    with pytest.raises(ValueError):
        px.SampledField(1.0, 0.0, 0.0, 1.0, np.zeros((4, 4), dtype=complex))
    with pytest.raises(ValueError):
        px.SampledField(0.0, math.inf, 0.0, 1.0, np.zeros((4, 4), dtype=complex))


def test_csv_round_trip(tmp_path):
    field = gaussian_field(nq=12, np_=10)
    path = tmp_path / "field.csv"
    field.to_csv(path)
    back = px.SampledField.from_csv(path)
    assert back.nq == 12 and back.np_ == 10
    assert back.q_min == field.q_min and back.p_max == field.p_max
    assert np.array_equal(back.values, field.values)


def test_csv_diagnostics(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1,0,1\n")
    with pytest.raises(ValueError, match="line 1"):
        px.SampledField.from_csv(path)
    path.write_text("0.0,1.0,0.0,1.0,2,2\n1.0,0.0\n")
    with pytest.raises(ValueError, match="line 3"):
        px.SampledField.from_csv(path)
    path.write_text("0.0,1.0,0.0,1.0,2,2\n1,0\n2,0\n3,0\nnope\n")
    with pytest.raises(ValueError, match="line 5"):
        px.SampledField.from_csv(path)


def test_json_round_trip():
    field = gaussian_field(nq=6, np_=5)
    doc = field.to_json()
    back = px.SampledField.from_json(doc)
    assert np.abs(back.values - field.values).max() == 0.0
    assert back.np_ == 5
