"""CLI invocations whose outputs are pinned in tests/golden."""
from __future__ import annotations

import io
import os
from pathlib import Path

from cylindre.cli import run

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "components_hyperbola": ["components", "--vars", "x,y", "--formula", "x*y - 1 = 0"],
    "components_two_disks": ["components", "--vars", "x,y", "--formula",
                             "x^2 + y^2 - 1 < 0 or (x - 3)^2 + y^2 - 1 < 0"],
    "components_auto_shear": ["components", "--vars", "x,y", "--formula", "x*y = 0", "--auto-shear"],
    "decompose_circle": ["decompose", "--vars", "x,y", "--poly", "x^2 + y^2 - 1"],
    "decompose_sqrt2_approx": ["decompose", "--vars", "x", "--poly", "x^2 - 2", "--approx"],
    "divide_square": ["divide", "--vars", "x1,xn", "--poly", "xn^2", "--degree", "1"],
    "divide_roots": ["divide", "--vars", "x1,xn", "--poly", "x1*xn^3 - xn + 2", "--degree", "2",
                     "--method", "roots"],
    "root_bound": ["root-bound", "--coeffs", "-3,2"],
    "prepare_guarded": ["prepare", "--vars", "x1,xn", "--poly", "x1*xn + 1", "--poly", "xn^3"],
    "shear_product": ["shear", "--vars", "x1,x2", "--poly", "x1*x2"],
    "oracle_hyperbola": ["oracle", "--vars", "x,y", "--formula", "x*y - 1 = 0",
                         "--box", "-4,4,-4,4", "--resolution", "1/50"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def regenerate() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out, err = invoke(argv)
        if code != 0:
            raise RuntimeError(f"{name}: exit {code}: {err}")
        (GOLDEN_DIR / f"{name}.jsonl").write_text(out, encoding="utf-8")


if __name__ == "__main__" or os.environ.get("CYLINDRE_UPDATE_GOLDEN") == "1":
    regenerate()
