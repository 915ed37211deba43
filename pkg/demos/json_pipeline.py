"""
JSON round trips and the qp command line tool
=============================================

Potentials serialize to a small JSON schema with exact rational
coefficients. The emission is canonical, so equal potentials produce
byte-identical documents, and everything the command line prints can
be fed straight back in.
"""

import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from qpcalc import QQ, potential_from_json, potential_to_json, xy_potential
from qpcalc.cli import main

f = xy_potential(12, {(2, 0): QQ(1), (1, 1): QQ(1), (0, 2): QQ(1)})
doc = potential_to_json(f)
print("document:", json.dumps(doc, sort_keys=True))
print("round trip is the identity:", potential_to_json(potential_from_json(doc)) == doc)

workdir = Path(tempfile.mkdtemp())
path = workdir / "potential.json"
path.write_text(json.dumps(doc))


def qp(*argv):
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(list(argv))
    return code, json.loads(out.getvalue())


code, payload = qp("jdim", "--input", str(path), "--max-degree", "12",
                   "--quotient-vertex", "1", "--quotient-vertex", "2")
print("jdim exit:", code, "dim:", payload["dim"], "quotients:", payload["quotients"])

code, payload = qp("typea-check", "--input", str(path))
print("recognition verdict:", payload["verdict"])

code, payload = qp("monomialize", "--input", str(path), "--max-degree", "12")
print("power table:", payload["kappa"], "checks:", payload["checks"])

code, payload = qp("a3", "classify", "--input", str(path))
print("class:", payload["family"], payload["params"])
# the emitted normal form is itself valid input
print("normal form reparses:", potential_from_json(payload["normal_form"]) is not None)

code, payload = qp("a3", "orbit", "--input", str(path))
print("orbit:", payload["orbit"])

code, payload = qp("diamond", "--n", "2", "--max-degree", "8", "--check", "overlaps")
print("diamond overlaps:", "pass" if payload["pass"] else payload["witnesses"])
