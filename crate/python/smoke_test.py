"""Smoke test for the stieltjes_py extension.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import math

import stieltjes_py as st

EULER = 0.5772156649015329
GAMMA1 = -0.07281584548367672


def close(x, y, tol=1e-14):
    return abs(x - y) <= tol


def main():
    assert "theorem2" in st.methods()
    assert len(st.suites()) == 8

    # closed-form case: truncated part 1, remainder gamma - 1
    r = st.gamma(0, 1, method="theorem2", m=1, n=0)
    assert close(float(r.value), EULER)
    assert close(float(r.remainder), EULER - 1)
    assert float(r.bound) == math.inf  # no envelope when m + n < 2

    # series methods against the oracle, complex argument as a string
    ref = complex(st.oracle_value(1, "2+0.5i").value)
    for method, kw in [("theorem2", dict(m=8, n=8)), ("n-inf", dict(j_max=80)),
                       ("m-inf", dict(j_max=80)), ("lambda", dict(j_max=80, lam=1))]:
        got = complex(st.gamma(1, "2+0.5i", method=method, **kw).value)
        assert abs(got - ref) < 1e-14, (method, got, ref)

    # shift moves |a| < 1 into range
    got = float(st.gamma(0, 0.5, m=8, n=8, shift=1).value)
    assert close(got, float(st.oracle_value(0, 0.5).value))
    try:
        st.gamma(0, 0.5, m=3, n=3)
    except ValueError:
        pass
    else:
        raise AssertionError("|a| < 1 must be rejected without a shift")

    g1 = st.gamma(1, 1, method="gamma1-odd", j_max=30)
    assert close(float(g1.value), GAMMA1)

    z = st.zeta(2, 1)
    assert close(float(z.value), math.pi ** 2 / 6)
    assert float(z.tail_bound) < 1e-30
    assert close(float(st.zeta(2, 1, deriv=1).value), -0.9375482543158437)

    assert st.stirling_row(6) == [0, -120, 274, -225, 85, -15, 1]

    rep = st.verify("theorem1", cases=5)
    assert rep.all_pass and rep.passed == 5, rep
    rep = st.verify("stirling")
    assert rep.all_pass, rep

    print("smoke test ok")


if __name__ == "__main__":
    main()
