import numpy as np

from dtnlab.converge import fit_order, run_converge, square_targets, unit_square


def test_targets():
    np.testing.assert_allclose(square_targets("dirichlet", 5) / np.pi ** 2, [2, 5, 5, 8, 10])
    np.testing.assert_allclose(square_targets("neumann", 6) / np.pi ** 2, [0, 1, 1, 2, 4, 4])
    np.testing.assert_allclose(square_targets("dirichlet", 1, shift=1.0), [2 * np.pi ** 2 + 1])


def test_fit_order_exact_power_law():
    hs = [1 / 8, 1 / 16, 1 / 32]
    errs = [[3 * h ** 2, 7 * h ** 2] for h in hs]
    assert abs(fit_order(hs, errs) - 2.0) < 1e-12
    # an eigenvalue reproduced exactly is left out of the fit
    errs = [[0.0, 5 * h ** 1.5] for h in hs]
    assert abs(fit_order(hs, errs) - 1.5) < 1e-12
    assert fit_order(hs, [[0.0]] * 3) is None


def test_unit_square_grid():
    form, split = unit_square(4)
    assert form.n == 25 and split.interior.size == 9
    assert form.mass_mode == "lumped"


def test_small_ladder():
    res = run_converge(ladder=(8, 16), count=5, k_max=3)
    by = {c.name: c for c in res.checks}
    assert by["payne_chain"].status == "pass"
    assert abs(res.order["dirichlet"] - 2.0) < 0.3
    assert abs(res.order["neumann"] - 2.0) < 0.3
    assert len(res.rows) == 4
    d = res.to_dict()
    assert d["checks"][0]["name"] == "converge_dirichlet"
