"""Smoke test for the phk extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
Run with:  python python/smoke_test.py   (or pytest python/)
"""

import json

import phk


def test_rp2_cohomology():
    rp2 = phk.corpus_object("rp2")
    assert str(rp2.cohomology(2, 2)) == "Z/2"
    assert rp2.cohomology(3, 1).order == 1
    assert rp2.euler_characteristic() == 1


def test_json_round_trip():
    torus = phk.corpus_object("torus")
    back = phk.Space.from_json(torus.to_json())
    assert back.counts() == torus.counts()
    assert json.loads(torus.to_json())["dim_cap"] == torus.dim_cap


def test_fundamental_group_and_h1():
    torus = phk.corpus_object("torus")
    assert torus.hurewicz_agrees([2, 3, 4])
    assert sorted(torus.covering_degrees(2)) == [1, 2, 2, 2]
    assert torus.h1_size("S3", "gauge") == torus.h1_size("S3", "homomorphisms") == 8


def test_bundles_and_cartan_leray():
    circle = phk.corpus_object("circle")
    assert len(circle.bundles("C3")) == 3
    cover = phk.corpus_object("rp2-cover")
    ss = cover.cartan_leray(2, 2)
    assert ss["passes"]
    assert ss["e_infinity"] == ss["abutment"] == [1, 1, 1]


def test_weak_equivalences():
    deep = phk.corpus_object("frobenius-map:5").check_weak_equivalence(2)
    assert deep.passed and deep.status == "pass-up-to-bounds"
    shallow = phk.corpus_object("frobenius-map:3").check_weak_equivalence(2)
    assert not shallow.passed
    assert shallow.witness is not None


def test_errors():
    for bad in ["no-such-space", "sphere:x"]:
        try:
            phk.corpus_object(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(bad)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
