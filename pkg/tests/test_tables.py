import pytest

from lie2.tables import classical_toral_ranks, expected_toral_rank, kv34_roots, symplectic_bracket_table, toral_parity_survey


def test_symplectic_table_statuses():
    t = symplectic_bracket_table()
    status = t.data["status"]
    assert set(status.values()) <= {"match", "index order", "erratum"}
    assert sum(v == "erratum" for v in status.values()) == 1
    assert "*" in t.render() and "~" in t.render()


def test_symplectic_table_other_indices():
    assert symplectic_bracket_table(m=3, i=2, j=3).rows


def test_classical_toral_ranks_match_closed_forms():
    t = classical_toral_ranks()
    for row in t.data["rows"]:
        letter, n = row["type"][0], int(row["type"][1:])
        assert row["toral_rank"] == expected_toral_rank(letter, n) == row["cartan"]


def test_survey_has_no_odd_simple_rank():
    t = toral_parity_survey(4)
    assert t.notes[-1] == "no odd toral rank found"
    for row in t.data["rows"]:
        if row["simple"] and not row["excluded"]:
            assert row["toral_rank"] % 2 == 0


def test_kv34_roots_table():
    t = kv34_roots()
    assert len(t.rows) == 15
    assert all(row[2] == "2" for row in t.rows)
    assert set(t.data["dims"].values()) == {2}


@pytest.mark.extended
def test_extended_toral_ranks():
    t = classical_toral_ranks(extended=True)
    ranks = {r["type"]: r["toral_rank"] for r in t.data["rows"]}
    assert ranks["E6"] == 6 and ranks["E7"] == 6 and ranks["E8"] == 8
