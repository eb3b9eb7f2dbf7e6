"""Write the reference configs into fixtures/ and the golden machine reports into fixtures/golden/.

    python scripts/make_fixtures.py          # rewrite everything
    python scripts/make_fixtures.py --check  # fail if anything on disk differs
"""

import argparse
import contextlib
import io
import sys
from pathlib import Path

from twistham import instances
from twistham.cli import main
from twistham.config import RunConfig, WindowConfig, dump_config

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"

CUBE1 = WindowConfig(tuple((-1, 1) for _ in range(5)), degree_cap=1)

CONFIGS = {
    "desk1.toml": (instances.desk1(), None, CUBE1, RunConfig(count=20)),
    "desk1_adjoint.toml": (instances.desk1(), instances.adjoint_module(instances.desk1()), CUBE1, RunConfig()),
    "desk1_mu.toml": (instances.desk1(), instances.desk1_module_mu(), CUBE1, RunConfig()),
    "desk1_irreducible.toml": (instances.desk1(), instances.desk1_module_irreducible(), CUBE1, RunConfig(count=10)),
    "desk1_rational.toml": (instances.desk1(), instances.desk1_module_rational(), CUBE1, RunConfig()),
    "allnat.toml": (instances.all_nat(), None, CUBE1, RunConfig()),
    # all-POINT: degree cap 0 is forced; the ambient is widened by one step in
    # the coordinates the bracket shifts
    "desk2.toml": (
        instances.desk2(),
        instances.adjoint_module(instances.desk2()),
        WindowConfig(tuple((-1, 1) for _ in range(6)), degree_cap=0, ambient_margin=1),
        RunConfig(count=2),
    ),
}

# (golden file, argv)
GOLDEN = {
    "desk1_jacobi_s40.jsonl": ["check", "jacobi", "--config", "fixtures/desk1.toml", "--samples", "40"],
    "desk1_representation_s20.jsonl": ["check", "representation", "--config", "fixtures/desk1_rational.toml",
                                       "--samples", "20"],
    "desk1_bracket_center.jsonl": ["bracket", "--config", "fixtures/desk1.toml",
                                   "1 * x[0,0,1,0,0|0,0,0,0]", "1 * x[0,0,-1,0,0|0,1,0,0]"],
    "desk1_validate.jsonl": ["validate", "--config", "fixtures/desk1_mu.toml"],
    "contact_n1_s20.jsonl": ["check", "contact", "--config", "fixtures/desk1.toml", "--samples", "20"],
}


def machine_report(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv) + ["--format", "machine"])
    return code, buf.getvalue()


def main_(check: bool) -> int:
    stale = []
    outputs = {FIX / name: dump_config(*spec) for name, spec in CONFIGS.items()}
    for path, text in outputs.items():
        if check:
            if not path.exists() or path.read_text() != text:
                stale.append(path)
        else:
            path.write_text(text)
    for name, argv in GOLDEN.items():
        path = FIX / "golden" / name
        code, text = machine_report([a if not a.startswith("fixtures/") else str(ROOT / a) for a in argv])
        if code != 0:
            print(f"{name}: command exited {code}", file=sys.stderr)
            return 1
        if check:
            if not path.exists() or path.read_text() != text:
                stale.append(path)
        else:
            path.write_text(text)
    for p in stale:
        print(f"stale: {p.relative_to(ROOT)}")
    return 1 if stale else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    sys.exit(main_(ap.parse_args().check))
