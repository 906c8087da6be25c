#!/usr/bin/env python3
"""Solves an exported CPLEX-LP model with SciPy's HiGHS MILP solver.

Usage: solve_lp.py <cli> <instance.json> <out.lp> <expected objective>

Runs `<cli> export-ilp`, parses the file independently of the C++ writer and
checks the solver optimum against an expected value.
"""
import re
import subprocess
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

TERM = re.compile(r"([+-]?)\s*([0-9.eE+-]+)\s+([A-Za-z_][A-Za-z0-9_]*)")


def parse_terms(text):
    terms = {}
    for sign, coef, name in TERM.findall(text):
        value = float(coef) * (-1 if sign == "-" else 1)
        terms[name] = terms.get(name, 0.0) + value
    return terms


def parse_lp(path):
    lines = []
    with open(path) as f:
        for raw in f:
            raw = raw.rstrip("\n")
            if raw.startswith("\\"):
                continue
            if raw.startswith("  ") and lines:
                lines[-1] += " " + raw.strip()
            else:
                lines.append(raw)
    section = None
    objective, rows, bounds, binaries = {}, [], {}, []
    for line in lines:
        if line in ("Minimize", "Subject To", "Bounds", "Binaries", "End"):
            section = line
            continue
        if section == "Minimize":
            objective = parse_terms(line.split(":", 1)[1])
        elif section == "Subject To":
            body = line.split(":", 1)[1]
            m = re.match(r"(.*)\s(<=|>=|=)\s(-?[0-9.eE+-]+)$", body)
            rows.append((parse_terms(m.group(1)), m.group(2), float(m.group(3))))
        elif section == "Bounds":
            m = re.match(r"\s*(-?[0-9.eE+-]+)\s*<=\s*(\w+)\s*<=\s*(-?[0-9.eE+-]+)", line)
            bounds[m.group(2)] = (float(m.group(1)), float(m.group(3)))
        elif section == "Binaries":
            binaries += line.split()
    return objective, rows, bounds, binaries


def solve(path):
    objective, rows, bounds, binaries = parse_lp(path)
    names = sorted(set(binaries) | set(bounds) | set(objective) | {v for r in rows for v in r[0]})
    index = {n: i for i, n in enumerate(names)}
    c = np.zeros(len(names))
    for n, v in objective.items():
        c[index[n]] = v
    a = np.zeros((len(rows), len(names)))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (terms, op, rhs) in enumerate(rows):
        for n, v in terms.items():
            a[r, index[n]] = v
        if op in ("<=", "="):
            hi[r] = rhs
        if op in (">=", "="):
            lo[r] = rhs
    lb = np.zeros(len(names))
    ub = np.ones(len(names))
    integrality = np.zeros(len(names))
    for n in binaries:
        integrality[index[n]] = 1
    for n, (l, u) in bounds.items():
        lb[index[n]], ub[index[n]] = l, u
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=integrality, bounds=Bounds(lb, ub))
    return res


def main():
    cli, instance, out, expected = sys.argv[1], sys.argv[2], sys.argv[3], float(sys.argv[4])
    subprocess.run([cli, "export-ilp", "--scenario", instance, "--out", out], check=True)
    res = solve(out)
    if res.status != 0:
        print(f"solver status {res.status}: {res.message}")
        return 1
    print(f"optimum {res.fun:.9g}, expected {expected:.9g}")
    return 0 if abs(res.fun - expected) <= 1e-6 * max(1.0, abs(expected)) else 1


if __name__ == "__main__":
    sys.exit(main())
