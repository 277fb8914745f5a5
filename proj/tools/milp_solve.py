#!/usr/bin/env python3
"""MILP solver driver: reads an MPS model, solves it with HiGHS (via
scipy.optimize.milp) and writes a HiGHS-style raw solution file.

Usage: milp_solve.py MODEL SOLUTION [--time-limit S] [--threads N]

Supported MPS subset: free format with ROWS (N/E/L/G), COLUMNS with
INTORG/INTEND markers, RHS, and BOUNDS (BV/UP/LO/FX/MI/BN). This covers what
mainstream exporters emit for pure binary/integer models.
"""

import argparse
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix


def parse_mps(path):
    obj_row = None
    row_sense = {}
    row_order = []
    col_ids = {}
    col_names = []
    integrality = []
    entries = []  # (row, col, value)
    obj_coeffs = {}
    rhs = {}
    lower = {}
    upper = {}

    section = None
    integer_mode = False
    with open(path) as fh:
        for raw in fh:
            line = raw.rstrip()
            if not line or line.startswith(("*", "$")):
                continue
            if not raw[0].isspace():
                section = line.split()[0].upper()
                continue
            tokens = line.split()
            if section == "ROWS":
                sense, name = tokens[0].upper(), tokens[1]
                if sense == "N":
                    if obj_row is None:
                        obj_row = name
                    continue
                row_sense[name] = sense
                row_order.append(name)
            elif section == "COLUMNS":
                if len(tokens) >= 3 and tokens[1] == "'MARKER'":
                    integer_mode = tokens[2] == "'INTORG'"
                    continue
                col = tokens[0]
                if col not in col_ids:
                    col_ids[col] = len(col_names)
                    col_names.append(col)
                    integrality.append(1 if integer_mode else 0)
                    lower[col] = 0.0
                    upper[col] = np.inf
                cid = col_ids[col]
                for i in range(1, len(tokens) - 1, 2):
                    row, value = tokens[i], float(tokens[i + 1])
                    if row == obj_row:
                        obj_coeffs[cid] = obj_coeffs.get(cid, 0.0) + value
                    else:
                        entries.append((row, cid, value))
            elif section == "RHS":
                for i in range(1, len(tokens) - 1, 2):
                    rhs[tokens[i]] = float(tokens[i + 1])
            elif section == "BOUNDS":
                btype = tokens[0].upper()
                col = tokens[2]
                value = float(tokens[3]) if len(tokens) > 3 else 0.0
                if col not in col_ids:
                    continue
                if btype == "BV":
                    lower[col], upper[col] = 0.0, 1.0
                    integrality[col_ids[col]] = 1
                elif btype == "UP":
                    upper[col] = value
                elif btype == "LO":
                    lower[col] = value
                elif btype == "FX":
                    lower[col] = upper[col] = value
                elif btype == "MI":
                    lower[col] = -np.inf
                elif btype == "BN":
                    upper[col] = np.inf

    n = len(col_names)
    c = np.zeros(n)
    for cid, value in obj_coeffs.items():
        c[cid] = value

    row_ids = {name: i for i, name in enumerate(row_order)}
    rows = np.array([row_ids[r] for r, _, _ in entries], dtype=np.int64)
    cols = np.array([cid for _, cid, _ in entries], dtype=np.int64)
    data = np.array([v for _, _, v in entries])
    a_matrix = coo_matrix((data, (rows, cols)), shape=(len(row_order), n)).tocsr()

    con_lb = np.empty(len(row_order))
    con_ub = np.empty(len(row_order))
    for name, i in row_ids.items():
        b = rhs.get(name, 0.0)
        sense = row_sense[name]
        con_lb[i] = b if sense in ("E", "G") else -np.inf
        con_ub[i] = b if sense in ("E", "L") else np.inf

    var_lb = np.array([lower[name] for name in col_names])
    var_ub = np.array([upper[name] for name in col_names])
    return c, a_matrix, con_lb, con_ub, var_lb, var_ub, np.array(integrality), col_names


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--threads", type=int, default=1)  # accepted for interface parity
    ap.add_argument("--mip-rel-gap", type=float, default=0.0)
    args = ap.parse_args()

    c, a_matrix, con_lb, con_ub, var_lb, var_ub, integrality, names = parse_mps(args.model)

    kwargs = {"c": c, "integrality": integrality, "bounds": Bounds(var_lb, var_ub),
              "options": {"time_limit": args.time_limit, "mip_rel_gap": args.mip_rel_gap}}
    if a_matrix.shape[0]:
        kwargs["constraints"] = LinearConstraint(a_matrix, con_lb, con_ub)
    res = milp(**kwargs)

    status = {0: "Optimal", 1: "Time limit reached", 2: "Infeasible",
              3: "Unbounded"}.get(res.status, "Error")
    with open(args.solution, "w") as out:
        out.write("Model status\n%s\n\n" % status)
        if status != "Optimal" or res.x is None:
            out.write("# Primal solution values\nNone\n")
            return 0
        out.write("# Primal solution values\nFeasible\n")
        out.write("Objective %.17g\n" % res.fun)
        out.write("# Columns %d\n" % len(names))
        for name, value in zip(names, res.x):
            out.write("%s %.12g\n" % (name, value))
        out.write("# Rows 0\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
