from k3fan import audits


def test_support_enumeration_count():
    assert sum(1 for _ in audits.supports()) == 2 * 511 ** 2 + 1


def test_gammas():
    r = audits.audit_gammas()
    assert r.passed and r.cases == 54 + 200 * 32


def test_saturation_default_and_all():
    r = audits.audit_saturation()
    assert r.passed
    assert r.details["coxeter_isotropic_rays"] == [[2, 18], [10]]
    assert r.details["chambers_skipped"] == ["RC(1,2)", "RC(2,1)", "RC(2,2)", "RC(2,3)", "RC(3,2)"]
    full = audits.audit_saturation(all_chambers=True)
    assert full.violations == 358 and full.cases == 902


def test_sampled_charges_and_monodromy():
    assert audits.audit_charges_sample(500, seed=2).passed
    assert audits.audit_monodromy(500, seed=2).passed


def test_charges_single_end_pair():
    n, bad = audits._charges_one((2, 3))
    assert n == 2 * 511 ** 2 + 1 and bad is None
