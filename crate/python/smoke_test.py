"""Smoke test for the evenset_py extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import evenset_py as ev


def main():
    lat = ev.SurfaceLattice("plane", 10)
    assert lat.rank == 11 and lat.canonical_square() == -1
    sextic = [6] + [-2] * 10
    assert lat.is_minus_four(sextic)
    assert lat.format(sextic).startswith("6H - 2E1")

    es = ev.verify_even_set(lat, [sextic])
    assert es.n == 1 and es.is_anticanonical()
    assert es.classify()["verdict"]["kind"] == "k3"

    try:
        ev.verify_even_set(lat, [sextic, sextic])
    except ValueError as e:
        print("rejected as expected:", e)
    else:
        raise AssertionError("repeated curve accepted")

    names = [n for n, _ in ev.catalog_list()]
    assert len(names) == 21
    for name in names:
        assert ev.catalog_check(name)["passed"], name

    lat12, curves = ev.catalog_entry("ell_12")
    c = ev.verify_even_set(lat12, curves).classify()
    assert (c["n"], c["ks2"], c["c2"]) == (12, 0, 24)

    fibers = ev.fiber_config(ev.catalog_export("ell_12"), budget=12)
    assert fibers["passed"] and fibers["budget"]["exact"]

    assert ev.miyaoka_check(16, 0, 24) and not ev.miyaoka_check(17, 0, 24)
    assert ev.general_type_feasible(10, 7) and not ev.general_type_feasible(10, 7, "regular")

    assert ev.search("plane", 2, 3, 1, strict_transforms=True) == []
    print("found", len(ev.search("plane", 4, 3, 2, dedup=False)), "two-curve even sets for k = 4")
    print("smoke test passed")


if __name__ == "__main__":
    main()
