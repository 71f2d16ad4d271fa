"""Bundle JSON format: round trips, rationals, validation errors."""

import json

import pytest

from klyachko import (
    BundleParseError,
    bundle_to_dict,
    dumps_bundle,
    line_bundle,
    loads_bundle,
    rank2_bundle,
    ShiftingIndices,
    tangent_bundle,
)
from klyachko.bundleio import rational_from_json, rational_to_json

from conftest import random_bundle


class TestRationals:
    def test_integers_pass_through(self):
        assert rational_from_json(-7) == -7

    def test_fraction_strings(self):
        assert rational_from_json("3/4") * 4 == 3
        assert rational_from_json("-2/6") * 3 == -1

    def test_round_trip_encoding(self):
        assert rational_to_json(rational_from_json("4/2")) == 2
        assert rational_to_json(rational_from_json("1/3")) == "1/3"

    @pytest.mark.parametrize("bad", ["x", "1/0", "1.5.2", True, None, [1]])
    def test_malformed(self, bad):
        with pytest.raises(BundleParseError):
            rational_from_json(bad)


class TestRoundTrip:
    def test_tangent(self):
        t = tangent_bundle(2)
        assert loads_bundle(dumps_bundle(t)) == t

    def test_random_bundles(self, rng):
        for _ in range(8):
            e = random_bundle(rng, rng.randint(1, 3))
            assert loads_bundle(dumps_bundle(e)) == e

    def test_document_round_trip(self):
        e = rank2_bundle(ShiftingIndices.parse("-1,0;-1,2;0,1"))
        doc = bundle_to_dict(e)
        assert bundle_to_dict(loads_bundle(json.dumps(doc))) == doc

    def test_higher_dimension(self):
        e = line_bundle((1, 0, -2, 3), n=3)
        assert loads_bundle(dumps_bundle(e)) == e


class TestParsing:
    def base_doc(self):
        return json.loads(dumps_bundle(rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,1"))))

    def test_fractional_entries_canonicalized(self):
        doc = self.base_doc()
        doc["filtrations"][0]["steps"][1]["basis"] = [["1/2", 0]]
        e = loads_bundle(json.dumps(doc))
        assert e.at(0, 0).basis == ((1, 0),)

    def test_non_decreasing_steps_rejected(self):
        doc = self.base_doc()
        # swap so a later step carries a larger space
        steps = doc["filtrations"][0]["steps"]
        steps[0]["basis"], steps[1]["basis"] = steps[1]["basis"], steps[0]["basis"]
        with pytest.raises(BundleParseError, match="ray 0"):
            loads_bundle(json.dumps(doc))

    def test_duplicate_ray(self):
        doc = self.base_doc()
        doc["filtrations"][1]["ray"] = 0
        with pytest.raises(BundleParseError, match="more than once"):
            loads_bundle(json.dumps(doc))

    def test_missing_ray(self):
        doc = self.base_doc()
        del doc["filtrations"][2]
        with pytest.raises(BundleParseError, match="missing filtrations"):
            loads_bundle(json.dumps(doc))

    def test_missing_field(self):
        with pytest.raises(BundleParseError, match="rank"):
            loads_bundle(json.dumps({"filtrations": []}))

    def test_bad_json(self):
        with pytest.raises(BundleParseError, match="line"):
            loads_bundle("{not json")

    def test_wrong_row_length(self):
        doc = self.base_doc()
        doc["filtrations"][0]["steps"][1]["basis"] = [[1, 0, 0]]
        with pytest.raises(BundleParseError, match="ray 0"):
            loads_bundle(json.dumps(doc))

    def test_ray_order_in_document_is_free(self):
        doc = self.base_doc()
        doc["filtrations"] = list(reversed(doc["filtrations"]))
        e = loads_bundle(json.dumps(doc))
        assert e == rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,1"))
