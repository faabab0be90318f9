# tests/unit/test_schemas.py

import pytest
from pydantic import ValidationError

from spectral_sketch.schemas.params import SketchParams, SparsifierBackend
from spectral_sketch.schemas.report import QueryReport, SizeReport, SpectralCertificate


# ---------------------------------------------
# SketchParams
# ---------------------------------------------

@pytest.mark.parametrize(
    "eps, alpha, beta",
    [
        (0.5, 7, 7),
        (0.25, 21, 19),
        (0.18, 35, 32),
    ],
    ids=["eps_0.5", "eps_0.25", "eps_0.18"],
)
def test_sample_counts_from_eps(eps, alpha, beta):
    """alpha = ceil(2 eps^(-5/3)) and beta = ceil(2 eps^(-8/5)) with the default constants."""
    params = SketchParams(eps=eps, c_alpha=2.0, c_beta=2.0)
    assert params.alpha == alpha, f"Expected alpha {alpha} at eps={eps}, got {params.alpha}"
    assert params.beta == beta, f"Expected beta {beta} at eps={eps}, got {params.beta}"


def test_h_basic_clamped_to_one():
    assert SketchParams(eps=0.5, c_alpha=2.0).h_basic == 1.0
    assert SketchParams(eps=0.5, c_alpha=0.9).h_basic == pytest.approx(0.75)
    assert SketchParams(eps=0.5, h_override=0.3).h_basic == pytest.approx(0.3)


@pytest.mark.parametrize(
    "delta, c_med, expected",
    [
        (0.05, 8.0, 25),
        (0.5, 1.0, 3),
        (0.4, 1.0, 3),
    ],
    ids=["default", "loose", "small_c_med"],
)
def test_replica_count_is_odd(delta, c_med, expected):
    params = SketchParams(eps=0.3, delta=delta, c_med=c_med)
    assert params.replicas == expected, f"Expected {expected} replicas, got {params.replicas}"
    assert params.replicas % 2 == 1


def test_tight_divides_eps_by_three():
    loose = SketchParams(eps=0.6, c_alpha=2.0)
    tight = SketchParams(eps=0.6, c_alpha=2.0, tight=True)
    assert tight.working_eps == pytest.approx(0.2)
    assert tight.alpha > loose.alpha


def test_sparsifier_name_is_normalized():
    params = SketchParams(eps=0.3, sparsifier="RESISTANCE")
    assert params.sparsifier == SparsifierBackend.RESISTANCE


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eps": 0.0},
        {"eps": 1.0},
        {"eps": 0.3, "delta": 1.2},
        {"eps": 0.3, "c_alpha": 0.0},
        {"eps": 0.3, "c_med": -1.0},
        {"eps": 0.3, "sparsifier": "spanner"},
        {"eps": 0.3, "h_override": 1.5},
    ],
    ids=["eps_zero", "eps_one", "delta_above_one", "c_alpha_zero", "c_med_negative",
         "unknown_sparsifier", "h_override_above_one"],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValidationError):
        SketchParams(**kwargs)


def test_params_are_frozen():
    params = SketchParams(eps=0.3)
    with pytest.raises(ValidationError):
        params.eps = 0.4


# ---------------------------------------------
# Reports
# ---------------------------------------------

@pytest.mark.parametrize(
    "raw, expected",
    [(-1e-12, 0.0), (2.0 + 1e-12, 2.0), (0.7, 0.7)],
    ids=["negative_roundoff", "above_two_roundoff", "regular"],
)
def test_certificate_clips_roundoff(raw, expected):
    assert SpectralCertificate(lambda1=raw, method="dense-eig").lambda1 == expected


def test_certificate_rejects_out_of_range():
    with pytest.raises(ValidationError):
        SpectralCertificate(lambda1=2.5, method="dense-eig")


def test_query_report_requires_median():
    report = QueryReport(estimate=3.1, replicas=[3.0, 100.0, 3.1])
    assert report.estimate == 3.1
    with pytest.raises(ValidationError):
        QueryReport(estimate=100.0, replicas=[3.0, 100.0, 3.1])


def test_size_reports_add_up():
    a = SizeReport(n=5, replicas=1, stored_edges=3, records=4, sample_records=1, total_bits=100)
    b = SizeReport(n=5, replicas=1, stored_edges=2, records=2, total_bits=50)
    total = a + b
    assert total.n == 5
    assert total.replicas == 2
    assert total.stored_edges == 5
    assert total.records == 6
    assert total.total_bits == 150
