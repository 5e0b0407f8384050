"""Loading, resolving, rendering and re-serializing definition files."""

from pathlib import Path

from rbhom import Scalar, check_extending_structure, load, resolve, serialize
from rbhom.fileformat import render

fixtures = Path(__file__).resolve().parent.parent / "fixtures"
doc = load(fixtures / "row10.dat")
print(serialize(doc))

model = resolve(doc, {"k2": Scalar(1)})
print("row10 with k2 = 1:", "ok" if check_extending_structure(model["row10"]).ok else "violated")
print("\nrendered with k2 = 1:\n")
print(serialize(render(doc, {"k2": Scalar(1)})))
