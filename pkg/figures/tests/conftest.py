import csv

import pytest

HEADER = ["iteration", "exploitability", "elapsed_ms"]


@pytest.fixture
def make_csv(tmp_path):
    """Write a checkpoint CSV the way the solver CLI does (repr floats,
    elapsed 0.0 when timing is off) and return its path."""

    def _write(name, rows=None, *, header=HEADER, raw_lines=None):
        path = tmp_path / name
        if raw_lines is not None:
            path.write_text("\n".join(raw_lines) + "\n")
            return str(path)
        if rows is None:
            rows = [(it, 1.0 / it) for it in range(10, 51, 10)]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for it, e in rows:
                w.writerow([it, repr(float(e)), repr(0.0)])
        return str(path)

    return _write
