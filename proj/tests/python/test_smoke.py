"""End-to-end smoke test for the python module against the shared fixtures."""
import json
import os
import sys

import condtypes

fixtures = sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures"


def fx(name):
    return os.path.join(fixtures, name)


# spaces
space = condtypes.load(fx("f1_space.json"))
assert isinstance(space, condtypes.Space)
assert space.points == ["a", "b", "c"]
assert space.events == ["C0", "C1"]
assert space.event_members("C1") == ["a", "b"]
doc = json.loads(space.to_json())
assert doc["kind"] == "space"

# conditional systems
cps = condtypes.load(fx("f1.json"))
assert isinstance(cps, condtypes.Cps)
assert cps.validate() == []
assert cps.space.points == space.points

bad = condtypes.load(fx("f1_bad.json"))
findings = bad.validate()
assert findings and any("C3-chain" in line for line in findings)

try:
    condtypes.load(fx("bad_rational.json"))
    raise AssertionError("bad rational accepted")
except ValueError:
    pass

try:
    condtypes.load(fx("no_such_file.json"))
    raise AssertionError("missing file accepted")
except ValueError:
    pass

# structures and hierarchies
ts1 = condtypes.load(fx("ts1.json"))
assert isinstance(ts1, condtypes.Structure)
assert ts1.agents == ["a1", "a2"]
assert ts1.types("a2") == ["u", "u'"]

levels = condtypes.hierarchy(ts1, depth=3)
assert levels["a2"]["u"] == levels["a2"]["u'"]
assert len(levels["a1"]["t"]) == 4
assert condtypes.stabilization_depth(ts1) == 1

flag, witness = condtypes.is_non_redundant(ts1)
assert not flag and witness == ("a2", "u", "u'")

quot, projection = condtypes.quotient(ts1)
assert quot.types("a2") == ["u"]
assert projection["a2"] == {"u": "u", "u'": "u"}
flag, witness = condtypes.is_non_redundant(quot)
assert flag and witness is None

try:
    ts1.types("zz")
    raise AssertionError("unknown agent accepted")
except RuntimeError:
    pass

# morphisms
src, dst, mapping = condtypes.load(fx("ts1_identity.json"))
ok, detail = condtypes.check_morphism(src, dst, mapping)
assert ok and detail == ""
ok, detail = condtypes.check_morphism(ts1, quot, projection)
assert ok

# fragments
realized, findings, maps = condtypes.fragment([ts1])
assert findings == []
assert realized.types("a2") == ["u"]
assert maps[0]["a2"] == {"u": "u", "u'": "u"}

# games
g1 = condtypes.load(fx("g1.json"))
assert isinstance(g1, condtypes.Game)
assert g1.players == ["p1", "p2"]
assert g1.strategies("p1") == ["Out.U", "Out.D", "In.U", "In.D"]
events = g1.conditioning_events("p2")
assert [label for label, _, _ in events] == ["@root", "afterIn"]
assert events[1][2] == [2, 3]
gspace = g1.space()
assert len(gspace.points) == 8
assert gspace.events == ["p1/@root", "p2/@root", "p2/afterIn"]
json.loads(g1.to_json())

print("smoke ok")
