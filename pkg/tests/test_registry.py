import itertools

import pytest

from approxpls.instances import stream
from approxpls.oracles import classify
from approxpls.registry import ENTRIES, PRIMARY, UnknownScheme, build_scheme


def test_twenty_two_primary_schemes():
    assert len(PRIMARY) == 22
    assert len(set(PRIMARY)) == 22


def test_required_parameters():
    with pytest.raises(ValueError, match="--kappa"):
        build_scheme("edge-cover-apls")
    with pytest.raises(ValueError, match="--k"):
        build_scheme("flow-dpls")
    with pytest.raises(ValueError):
        build_scheme("bmatching-apls", kappa=0)
    with pytest.raises(UnknownScheme):
        build_scheme("no-such-scheme")


def test_every_entry_builds():
    for name, e in ENTRIES.items():
        kw = {"kappa": 2 if "kappa" in e.needs else None, "k": 3 if "k" in e.needs else None}
        assert build_scheme(name, **kw).name == name


@pytest.mark.parametrize("name", PRIMARY)
def test_streams_are_deterministic_and_in_universe(name):
    a = [(c.tag, c.cfg.output) for c in itertools.islice(stream(name, 3), 6)]
    b = [(c.tag, c.cfg.output) for c in itertools.islice(stream(name, 3), 6)]
    assert a == b
    for c in itertools.islice(stream(name, 3), 6):
        assert classify(c.scheme, c.cfg).family in ("yes", "no", "gap")
        assert c.cfg.graph.n <= 10 and c.cfg.graph.W <= 10
