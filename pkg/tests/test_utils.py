from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from brauerheight.core import field_make
from brauerheight.utils import json
from brauerheight.utils.conversion import try_enum
from brauerheight.utils.report import ReportBase


class Colour(Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True)
class Leaf(ReportBase):
    name: str
    colour: Colour


@dataclass(frozen=True)
class Tree(ReportBase):
    size: int
    leaves: Tuple[Leaf, ...] = ()
    ratio: Optional[Fraction] = None
    note: Optional[str] = None


class TestReportBase:
    def test_to_dict(self):
        tree = Tree(3, (Leaf("a", Colour.RED),), Fraction(1, 3))

        assert tree.to_dict() == {
            "size": 3,
            "leaves": [{"name": "a", "colour": "red"}],
            "ratio": "1/3",
        }

    def test_round_trip(self):
        tree = Tree(2**60, (Leaf("a", Colour.RED), Leaf("b", Colour.BLUE)), Fraction(5, 12))
        data = json.loads(json.dumps(tree.to_dict()))

        assert data["size"] == str(2**60)
        assert Tree.from_dict(data) == tree

    def test_unknown_keys_are_ignored(self):
        assert Tree.from_dict({"size": 1, "colour": "green"}) == Tree(1)

    def test_field_elements_are_strings(self):
        F = field_make(5)

        @dataclass
        class Value(ReportBase):
            x: object

        assert Value(F(3)).to_dict() == {"x": "3"}


class TestJson:
    def test_compact(self):
        assert json.dumps({"a": [1, 2], "b": "c"}) == '{"a":[1,2],"b":"c"}'

    def test_loads(self):
        assert json.loads('{"a":[1,2]}') == {"a": [1, 2]}


class TestConversion:
    def test_try_enum(self):
        assert try_enum(Colour, "red") is Colour.RED
        assert try_enum(Colour, "green") == "green"

