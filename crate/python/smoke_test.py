"""Smoke test for the linkflows extension module.

Uses an installed module if there is one; otherwise builds the crate with
cargo and imports the resulting shared library.

    python3 python/smoke_test.py
"""

import importlib
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURE = ROOT / "crates" / "core" / "tests" / "fixtures" / "sample_comment.trig"
GOLDEN = "RAeVP1CBA9ToTq_2qO9MYeadAPMhSCcCyIgI21WysqchE"


def load():
    try:
        return importlib.import_module("linkflows")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "linkflows-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "liblinkflows.so"
    scratch = tempfile.mkdtemp()
    shutil.copy(built, pathlib.Path(scratch) / "linkflows.so")
    sys.path.insert(0, scratch)
    return importlib.import_module("linkflows")


def main():
    lf = load()

    sample = FIXTURE.read_text()
    assert lf.validate(sample) == []
    assert lf.artifact_code(sample) is None
    published = lf.make_trusty(sample)
    assert lf.artifact_code(published) == GOLDEN
    assert lf.verify(published)
    assert not lf.verify(published.replace("2020-06-01", "2021-06-01"))

    with tempfile.TemporaryDirectory() as out:
        stats = lf.gen_corpus(out, seed=42)
        assert stats["nanopublications"] == 627
        assert stats["triples"] == 10437
        assert len(list(pathlib.Path(out).glob("*.trig"))) == 627
        store = lf.Store(out)

    assert store.stats() == stats
    assert [a["comments"] for a in store.articles()] == [85, 59, 69]
    totals = [
        [r["total"] for r in store.cq(a, 1)["result"]] for a in ("a1", "a2", "a3")
    ]
    assert totals == [[17, 18, 50], [16, 21, 22], [11, 42, 16]], totals
    assert store.cq("a1", 5, threshold=1)["result"]["threshold"] == 1
    assert store.cq("a1", 6, mode="negative-compulsory")["result"]["mode"] == "negative-compulsory"
    assert store.cq_text("a2", 3).splitlines()[0].split() == ["aspect", "comments"]

    negatives = store.comments(article="a1", positivity="negative", impact_min="4")
    cq5 = [p["comment"] for p in store.cq("a1", 5)["result"]["points"]]
    assert sorted(c["uri"] for c in negatives) == sorted(cq5)
    assert len(store.comments()) == 213

    for bad in (lambda: store.cq("a9", 1), lambda: store.cq("a1", 8)):
        try:
            bad()
        except (KeyError, ValueError):
            pass
        else:
            raise AssertionError("expected an error")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
