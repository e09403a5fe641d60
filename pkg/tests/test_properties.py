import pytest

from hyperbound import properties as pr


@pytest.mark.parametrize("name,fn", pr.SUITE, ids=[n for n, _ in pr.SUITE])
def test_suite_default_sizes(name, fn):
    ok, info = fn()
    assert ok, info


@pytest.mark.parametrize("fn,kwargs", [
    (pr.field_axioms, {"full_limit": 32, "samples": 20000}),
    (pr.euler_relation, {"samples": 600}),
    (pr.restrict_commutes, {"samples": 400, "evals": 16}),
    (pr.zero_witness_total, {"samples": 800}),
    (pr.singular_union_identity, {"samples": 40}),
    (pr.nonsingular_descent, {"samples": 40}),
    (pr.cone_count_law, {"samples": 120}),
    (pr.cone_lemma_oracle, {"q": 3}),
], ids=lambda v: getattr(v, "__name__", ""))
def test_suite_larger_samples(fn, kwargs):
    ok, info = fn(**kwargs)
    assert ok, info


def test_prime_powers_up_to_128():
    qs = pr.prime_powers()
    assert len(qs) == 44
    assert qs[:8] == [2, 3, 4, 5, 7, 8, 9, 11]
    assert 128 in qs and 6 not in qs and 100 not in qs
