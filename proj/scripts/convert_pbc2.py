#!/usr/bin/env python3
"""Export the pbc2 data frame from the R package JM to data/pbc2.csv.

Requires the `rdata` package and a copy of the JM source tarball
(https://cran.r-project.org/package=JM):

    pip install rdata
    tar xzf JM_1.5-2.tar.gz JM/data/pbc2.rda
    python3 scripts/convert_pbc2.py JM/data/pbc2.rda data/pbc2.csv
"""
import sys

import numpy as np
import pandas as pd
import rdata


def g15(v):
    return np.format_float_positional(float(v), precision=15, unique=True, trim="-")


def main(rda_path, csv_path):
    df = rdata.read_rda(rda_path)["pbc2"].reset_index(drop=True)
    out = pd.DataFrame(
        {
            "id": [str(x) for x in df["id"]],
            "year": [g15(v) for v in df["year"]],
            "years": [g15(v) for v in df["years"]],
            "status2": [str(int(v)) for v in df["status2"]],
            "drug": [str(x) for x in df["drug"]],
            "sex": [str(x) for x in df["sex"]],
            "age": [g15(v) for v in df["age"]],
            "serBilir": [g15(v) for v in df["serBilir"]],
            "edema": [str(x) for x in df["edema"]],
            "albumin": [g15(v) for v in df["albumin"]],
            "prothrombin": [g15(v) for v in df["prothrombin"]],
            "histologic": [str(int(v)) for v in df["histologic"]],
            "SGOT": [g15(v) for v in df["SGOT"]],
        }
    )
    out.to_csv(csv_path, index=False)
    print(f"wrote {csv_path}: {out.shape[0]} rows, {out['id'].nunique()} subjects")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
