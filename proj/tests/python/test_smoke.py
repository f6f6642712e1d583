import math

import pytest

import pdmqi


def test_ground_state_entropy_closed_form():
    state = pdmqi.BoundState(pdmqi.ModelParams.preset(2.0), 0)
    report = pdmqi.compute_report(state)
    assert report["S_x"] == pytest.approx(638 / 105 - math.log(280), abs=1e-10)
    assert report["S_sum"] >= pdmqi.bbm_bound()
    assert report["F_x"] == pytest.approx(4 * report["p2_mean"], rel=1e-8)


def test_parameters_and_model_functions():
    params = pdmqi.ModelParams.preset(4.0)
    assert params.kappa_sq == pytest.approx(1.0)
    assert params.is_preset()
    assert pdmqi.mass_position(0.0, params) == pytest.approx(params.m0)
    assert pdmqi.x_to_z(0.0) == 0.0


def test_hypergeometric_polynomial():
    assert pdmqi.hyp2f1_terminating(-1.0, 2.0, 4.0, 0.5) == pytest.approx(0.75)


def test_errors_carry_their_kind():
    with pytest.raises(pdmqi.PdmqiError) as info:
        pdmqi.hyp2f1_terminating(0.5, 0.5, 1.0, 0.2)
    assert info.value.kind == "NonTerminating"
    with pytest.raises(pdmqi.PdmqiError):
        pdmqi.ModelParams(-1.0, 1.0, 1.0, 1.0)


def test_spectrum_and_cli(tmp_path):
    spectrum = pdmqi.fd_spectrum(pdmqi.ModelParams.preset(1.0), 3, 2001)
    assert spectrum["richardson"] == pytest.approx([11.0, 29.0, 55.0], abs=1e-4)
    assert pdmqi.run(["tables", "--levels", "0", "--widths", "2", "--out", str(tmp_path)]) == 0
    header = (tmp_path / "shannon.csv").read_text().splitlines()[0]
    assert header == "n,a,S_x,S_p,S_sum,bbm_bound"
