"""Smoke test for the tracerank Python bindings."""

import json

import tracerank_py as tr


def main():
    gb = tr.groebner_basis(["x", "y"], ["x*y - 1", "y^2 - x"])
    print("gb:", gb)
    assert len(gb) == 2

    job = tr.Job.corpus("fig8-X0")
    assert job.rank("C") == "2"
    assert job.rank("Z") == "2"
    assert job.contains("y^2 - (1 + x^2)*y - 1 + 2*x^2")
    print("fig8 rank over Z:", job.rank("Z"))

    text = job.to_text()
    assert tr.Job.parse(text).to_text() == text

    trefoil = tr.Job.corpus("trefoil")
    report = json.loads(trefoil.detect())
    assert report["norm_curve"]["flag"] is False
    report_text, code = trefoil.check()
    assert code == 0, report_text

    cert = tr.Job.corpus("m003-X0").certificate("Z")
    assert cert is not None and "free-basis" in cert

    assert tr.cl_witness([1, 3, 6], 3) is not None
    assert tr.cl_witness([1, 0, 1], 2) is None

    try:
        tr.Job.parse("vars: x;\nideal: y;\n")
    except ValueError as e:
        print("parse error:", e)
    else:
        raise AssertionError("undeclared variable accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
