from waringlab import suite


def test_grid_point_cycles():
    assert suite.grid_point("c", 0) == (3, 5)
    assert suite.grid_point("c", 4) == suite.grid_point("c", 0)


def test_binary_batches():
    assert suite.monomial_ranks()["passed"]
    assert suite.worked_gap()["passed"]


def test_collinear_h1():
    result = suite.collinear_h1(1, seed=0)
    assert result["runs"] == 16
    assert result["passed"], result["failures"]


def test_round_trip_batches():
    results = suite.run_suite([4, 5, 6, 7, 8], runs={4: 3, 5: 1, 6: 2, 8: 1}, seed=0)
    assert [r["criterion"] for r in results] == [4, 5, 6, 7, 8]
    for result in results:
        assert result["passed"], result["failures"]
