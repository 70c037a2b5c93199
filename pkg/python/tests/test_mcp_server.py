from lrcoh.mcp_server import analyse_connection, check_problem, cohomology_table

CUBIC = {"weights": [1, 1, 1], "degree": 3, "f": "x1^3 + x2^3 + x3^3"}


def test_check_problem_tool():
    out = check_problem(CUBIC)
    assert out["ok"] is True
    assert out["check"]["homogeneous"] is True


def test_tool_failures_are_reported_not_raised():
    out = check_problem({"weights": [1, 1], "f": "x1"})
    assert out["ok"] is False
    assert out["error"] == "ProblemFileError"


def test_cohomology_table_tool():
    out = cohomology_table(CUBIC, max_n=1, window="0:1")
    dims = {(x["n"], x["e"]): x["dimension"] for x in out["cohomology"]["entries"]}
    assert dims == {(0, 0): 1, (0, 1): 0, (1, 0): 1, (1, 1): 0}
    bad = cohomology_table(CUBIC, window="3:1")
    assert bad["ok"] is False


def test_analyse_connection_tool():
    out = analyse_connection(CUBIC, {"generators": ["1"]}, {"trivial": True},
                             compare={"trivial": True, "exact": "x2^2"})
    assert out["connection"]["valid"] is True
    assert out["connection"]["moduli"]["equivalent"] is True


def test_value_errors_come_back_as_failures():
    zero_degree = {**CUBIC, "degree": 0}
    for out in (
        check_problem(zero_degree),
        cohomology_table(zero_degree),
        analyse_connection(zero_degree, {"generators": ["1"]}, {"trivial": True}),
    ):
        assert out["ok"] is False
        assert out["error"] == "ValueError"
