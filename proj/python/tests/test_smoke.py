from fractions import Fraction

import pytest

import tau2


def test_heisenberg_commutator():
    h = tau2.Presentation.heisenberg()
    a1, a2 = tau2.Element.a(h, 0), tau2.Element.a(h, 1)
    c = tau2.commutator(a1, a2)
    assert c.alpha == [0, 0] and c.gamma == [1]
    assert a1 * a2 != a2 * a1


def test_big_powers_are_exact():
    h = tau2.Presentation.heisenberg()
    x = tau2.Element(h, [3, 5], [7])
    k = 10**30
    y = x ** k
    assert y.alpha == [3 * k, 5 * k]
    assert (y * x ** (-k)) == tau2.Element.identity(h)


def test_analyze_regular():
    r = tau2.analyze(tau2.Presentation.heisenberg())
    assert r["regular"] is True and r["center"]["equals_C"] is True


def test_parse_error():
    with pytest.raises(tau2.ParseError):
        tau2.Presentation.parse("n 2\nm\n")


def test_exact_experiment():
    csv = tau2.run_experiment("model tau2\nn 2\nm 2\nell 1\nproperties mainthm_conjunction\nexact true\n")
    row = csv.splitlines()[1].split(",")
    assert Fraction(row[9]) == Fraction(8, 9)


def test_count_bound():
    assert tau2.count_bound(3, 2, 1, "mainthm", "2ell+1") == (35, 243)


def test_cli_roundtrip():
    code, out, _ = tau2.run_cli(["--version-header", "analyze", "/dev/null"])
    assert code == 1
