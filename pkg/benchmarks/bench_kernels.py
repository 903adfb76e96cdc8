"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--states 300] [--repeat 3]

Lexer kernels are timed in-process on the same text. Parse and full
extraction are timed in subprocesses, one with the compiled modules and one
with STATE_HARVEST_PURE=1, because backend selection happens at import.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

from state_harvest import CorpusSpec, generate
from state_harvest import _lexer_py

try:
    from state_harvest import _lexer_c
except ImportError:
    _lexer_c = None

_CHILD = r"""
import json, sys, time
from state_harvest import build_state_machine, parse_project, parser, lexer, CorpusSpec, generate
bundle = generate(CorpusSpec.scale(int(sys.argv[1]), 4, 8, 42))
best_parse = best_total = float("inf")
for _ in range(int(sys.argv[2])):
    t0 = time.perf_counter()
    project = parse_project(bundle.source_files)
    t1 = time.perf_counter()
    build_state_machine(project)
    t2 = time.perf_counter()
    best_parse = min(best_parse, t1 - t0)
    best_total = min(best_total, t2 - t0)
print(json.dumps({"lexer": lexer.BACKEND, "parser": parser.BACKEND, "nodes": len(project),
                  "parse": best_parse, "total": best_total}))
"""


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_child(states, repeat, pure):
    env = dict(os.environ)
    env.pop("STATE_HARVEST_PURE", None)
    if pure:
        env["STATE_HARVEST_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", _CHILD, str(states), str(repeat)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    bundle = generate(CorpusSpec.scale(args.states, 4, 8, 42))
    text = "\n".join(t for _, t in bundle.source_files)
    ntok = len(_lexer_py.scan(text)[0])
    print(f"corpus: {len(bundle.source_files)} files, {len(text)} chars, {ntok} tokens")

    py = best_of(lambda: _lexer_py.scan(text), args.repeat)
    print(f"lexer   python  {py:8.3f} s")
    if _lexer_c is None:
        print("lexer   cython  (extension not built)")
    else:
        assert _lexer_c.scan(text) == _lexer_py.scan(text)
        c = best_of(lambda: _lexer_c.scan(text), args.repeat)
        print(f"lexer   cython  {c:8.3f} s   x{py / c:.1f}")

    fast = run_child(args.states, args.repeat, pure=False)
    slow = run_child(args.states, args.repeat, pure=True)
    for key in ("parse", "total"):
        label = "parse  " if key == "parse" else "extract"
        print(f"{label} python  {slow[key]:8.3f} s")
        print(f"{label} {fast['parser']:<7} {fast[key]:8.3f} s   x{slow[key] / fast[key]:.1f}")
    print(f"nodes: {fast['nodes']}")


if __name__ == "__main__":
    main()
