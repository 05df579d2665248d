import random

import pytest

from grpd import groups
from grpd.complexity import point_groupoid
from grpd.core import (BadInverse, PartialComposition, pair_groupoid,
                       validate_functor, validate_groupoid)
from grpd.bibundle import unit_bibundle, validate_bibundle
from grpd.corpus import (CorpusConfig, corpus_groupoids, random_datum,
                         random_functor)
from grpd.formats import (ParseError, parse_document,
                          serialize_bibundle, serialize_bundle,
                          serialize_cover, serialize_datum,
                          serialize_functor, serialize_groupoid)


def test_groupoid_round_trip():
    for g in corpus_groupoids(CorpusConfig(seed=8, count=6)):
        doc = parse_document(serialize_groupoid(g))
        g2 = doc.groupoids[g.name]
        assert g.equal_presentation(g2)
        validate_groupoid(g2)


def test_functor_round_trip():
    rng = random.Random(9)
    a, b = corpus_groupoids(CorpusConfig(seed=8, count=2))
    f = random_functor(rng, a, b)
    text = serialize_groupoid(a) + serialize_groupoid(b) + \
        serialize_functor(f)
    f2 = parse_document(text).functors[f.name]
    assert f2.obj_map == f.obj_map and f2.arr_map == f.arr_map
    validate_functor(f2)


def test_bibundle_round_trip():
    g = pair_groupoid("p2", ["1", "2"])
    u = unit_bibundle(g)
    text = serialize_groupoid(g) + serialize_bibundle(u)
    u2 = parse_document(text).bibundles[u.name]
    validate_bibundle(u2)
    assert u2.left.act == u.left.act
    assert u2.right.act == u.right.act
    assert u2.left.actor == u.left.actor


def test_datum_round_trip():
    rng = random.Random(10)
    bundle, cover, datum = random_datum(rng, "d", base_size=4, max_fibre=3)
    text = serialize_datum(datum)
    doc = parse_document(text)
    d2 = doc.data[datum.name]
    assert d2.transitions == datum.transitions
    for p in cover.pieces:
        assert sorted(d2.fibres[p.name].total) == \
            sorted(datum.fibres[p.name].total)


def test_datum_with_empty_fibres_round_trips_and_glues():
    from grpd.descent import glue
    # seed 1 produces pieces whose fibres are empty over some points;
    # those overlaps carry the empty bijection and must survive the text
    rng = random.Random(1)
    bundle, cover, datum = random_datum(rng, "demo", base_size=3,
                                        max_fibre=3)
    doc = parse_document(serialize_datum(datum))
    d2 = doc.data[datum.name]
    assert d2.transitions == datum.transitions
    assert len(glue(d2).bundle.total) == len(glue(datum).bundle.total)
    text2 = serialize_bundle(bundle) + serialize_cover(cover)
    doc2 = parse_document(text2)
    assert doc2.bundles[bundle.name].proj == bundle.proj
    assert doc2.covers[cover.name].base == cover.base


def test_comments_and_blank_lines_ignored():
    text = """# a comment
groupoid g   # trailing comment
objects: x
arrow e : x -> x
id x = e
inv e = e
comp e e = e
"""
    g = parse_document(text).groupoids["g"]
    validate_groupoid(g)
    assert g.objects == ("x",)


def test_parse_error_carries_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_document("groupoid g\nobjects: a\nwhatever is this\n",
                       source="f.grpd")
    assert err.value.source == "f.grpd"
    assert err.value.line == 3
    assert err.value.col == 1
    with pytest.raises(ParseError) as err:
        parse_document("groupoid g\narrow a = x -> y\n")
    assert err.value.line == 2


def test_content_before_any_block_rejected():
    with pytest.raises(ParseError):
        parse_document("objects: x\n")


def test_unknown_reference_rejected():
    with pytest.raises(ParseError):
        parse_document("functor f : nowhere -> nowhere\n")


def test_omitted_comp_line_fails_validation():
    g = pair_groupoid("p2", ["1", "2"])
    lines = [line for line in serialize_groupoid(g).splitlines()
             if not line.startswith("comp 2>1 1>2")]
    g2 = parse_document("\n".join(lines)).groupoids["p2"]
    with pytest.raises(PartialComposition):
        validate_groupoid(g2)


def test_omitted_inv_line_fails_validation():
    g = point_groupoid("bz2", groups.cyclic(2))
    lines = [line for line in serialize_groupoid(g).splitlines()
             if not line.startswith("inv k1")]
    g2 = parse_document("\n".join(lines)).groupoids["bz2"]
    with pytest.raises(BadInverse):
        validate_groupoid(g2)


def test_cross_file_namespace_resolution():
    a = pair_groupoid("A", ["1", "2"])
    doc = parse_document(serialize_groupoid(a))
    text = "functor f : A -> A\nobj 1 -> 1\nobj 2 -> 2\n" + "\n".join(
        f"arr {x} -> {x}" for x in a.arrows)
    parse_document(text, into=doc)
    validate_functor(doc.functors["f"])
