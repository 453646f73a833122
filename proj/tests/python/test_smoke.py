"""Smoke test for the Python bindings: run as `python test_smoke.py <module-dir>`."""

import sys

sys.path.insert(0, sys.argv[1])

import grwick  # noqa: E402


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    assert grwick.__version__

    assert close(grwick.pfaffian([[0, 1], [-1, 0]]), 1.0)
    assert close(grwick.pfaffian([[0.0]]), 0.0)
    m4 = [
        [0, 1, 2, 3],
        [-1, 0, 4, 5],
        [-2, -4, 0, 6],
        [-3, -5, -6, 0],
    ]
    # first-row expansion: 1*6 - 2*5 + 3*4
    assert close(grwick.pfaffian(m4), 8.0)

    c = [[0, 0.5], [-0.5, 0]]
    assert close(grwick.moment(c, [0, 1]), 0.5)
    assert close(grwick.moment(c, [1, 0]), -0.5)
    assert close(grwick.moment(c, [0]), 0.0)
    assert close(grwick.moment(c, []), 1.0)

    assert close(grwick.integral_bound(c), 2 * 0.5**0.5)
    assert grwick.integral_bound([[0, 0], [0, 0]]) == 1.0

    assert grwick.identity_spot_check(seed=11, dim=2, count=2)

    try:
        grwick.pfaffian([[0, 1], [1, 0]])
    except ValueError:
        pass
    else:
        raise AssertionError("non-antisymmetric input must raise")

    print("python smoke: ok")


if __name__ == "__main__":
    main()
