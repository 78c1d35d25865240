"""The one-pole ladder family and its stated vertical structure."""

from onecyl import GeneralizedPermutation, cylinder_decomposition, singularity_pattern
from onecyl.suspension import lam_from_positions


def one_pole_ladder(l: int) -> GeneralizedPermutation:
    run = [str(i) for i in range(3, l + 1)]
    return GeneralizedPermutation.from_tokens(["0", "1", "0"], run + ["2"] + run + ["1", "2"])


def test_ladder_pattern():
    for l in (5, 7, 9):
        pat = singularity_pattern(one_pole_ladder(l))
        assert pat.orders == (2 * l - 1, -1)
        assert pat.genus == (l + 1) // 2


def test_ladder_weighted_decomposition():
    for l in (5, 7, 9):
        gp = one_pole_ladder(l)
        genus = singularity_pattern(gp).genus
        lam = lam_from_positions(gp, [l - 1, 1, l - 1] + [1] * (2 * l - 1))
        dec = cylinder_decomposition(gp, lam)
        assert len(dec.cylinders) == genus - 1
        assert sum(c.simple for c in dec.cylinders) == 1
        simple = next(c for c in dec.cylinders if c.simple)
        assert simple.circumference == 2
