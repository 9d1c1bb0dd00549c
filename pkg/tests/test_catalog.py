from fractions import Fraction

import pytest

from curvelab import (NotFound, TransformStep, apply_step, expand, get_entry,
                      list_catalog, parse)

EXPECTED_SLUGS = [
    "circle-unit",
    "circle-shifted",
    "lemniscata-huygens",
    "piriforme",
    "labios",
    "cardioide",
    "corazon",
    "tricuspide",
    "punta-de-flecha",
    "pisciforme",
]


class TestListing:
    def test_slugs_and_order_are_stable(self):
        assert [e.slug for e in list_catalog()] == EXPECTED_SLUGS

    def test_lookup_matches_listing(self):
        for entry in list_catalog():
            assert get_entry(entry.slug) is entry

    def test_unknown_slug(self):
        with pytest.raises(NotFound):
            get_entry("astroide")

    def test_names_are_nonempty_and_unique(self):
        names = [e.name for e in list_catalog()]
        assert all(names)
        assert len(set(names)) == len(names)


class TestEntryConsistency:
    def test_expr_expands_to_stored_poly(self):
        for entry in list_catalog():
            got = expand(parse(entry.expr), *entry.vars)
            assert got == entry.poly, entry.slug

    def test_stored_poly_is_canonical(self):
        for entry in list_catalog():
            assert entry.poly.normalize() == entry.poly, entry.slug
            assert entry.poly.vars == entry.vars, entry.slug

    def test_frames_are_valid_windows(self):
        for entry in list_catalog():
            u0, u1, v0, v1 = entry.frame
            assert u0 < u1 and v0 < v1, entry.slug


class TestConstructionWiring:
    def test_every_derived_entry_matches_its_parent_transform(self):
        derived = [e for e in list_catalog() if e.construction is not None]
        assert len(derived) == 6
        for entry in derived:
            c = entry.construction
            parent = get_entry(c.parent)
            step = TransformStep(c.kind, c.pivot, c.replaced, c.new,
                                 Fraction(c.center))
            got, _ = apply_step(parent.poly, step)
            assert got == entry.poly, entry.slug

    def test_roots_have_no_construction(self):
        for slug in ("circle-unit", "circle-shifted", "cardioide",
                     "tricuspide"):
            assert get_entry(slug).construction is None
