import json

import pybiell

# field arithmetic: in gf2^4 with t^4 = t+1, t * t^3 = t+1
assert pybiell.fq_op("gf2^4:0x13", "mul", 0b0010, 0b1000) == 0b0011
assert pybiell.fq_op("gf2^4:0x13", "inv", 0b0010) == pybiell.fq_op("gf2^4:0x13", "pow", 0b0010, 14)
assert pybiell.fq_op("gf2^4:0x13", "sqrt", 0b0100) == 0b0010

# the n=8 main family over gf16
rep = json.loads(pybiell.construct(8))
assert rep["genus"] == 9
assert rep["prank"] == 9
assert rep["group_order"] == 32
assert rep["group_type"] == "dihedral"
assert rep["iota_fixed"] == 8
assert rep["nakajima_attained"]
assert len(rep["ramification"]) == 8
assert all(r["different"] == 2 for r in rep["ramification"])

# a census example: the q=4 hyperelliptic family
cen = json.loads(pybiell.census("6.3", 4))
claims = {c["name"]: c["status"] for c in cen["claims"]}
assert claims["genus (Hurwitz route)"] == "matched"
assert claims["the two genus routes agree"] == "matched"

# the plane model starts with the degree-(28,4) leading term
model = pybiell.plane_model(8, 1)
assert "X^28*Z^4" in model

print("smoke OK")
