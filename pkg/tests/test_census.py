from __future__ import annotations

import pytest

from symdeg.census import ff_profile, ffq_orbit_census, fixed_square_zero
from symdeg.errors import TooLarge
from symdeg.orbits import enumerate_symmetric_orbits


@pytest.mark.parametrize("n,eps", [(2, 1), (2, -1), (3, 1), (4, 1)])
def test_profile_sets_agree_over_f3(n, eps):
    realized = {ff_profile(x, 3) for x in fixed_square_zero(n, eps, 3)}
    expected = {r.profile for r in enumerate_symmetric_orbits(n, eps)}
    assert realized == expected


def test_sp2_over_f3():
    # nilpotents [[a, b], [c, -a]] with a^2 + bc = 0: c != 0 gives 3 * 2, c = 0 gives b in {1, 2}
    assert len(fixed_square_zero(2, -1, 3)) == 9
    rows = ffq_orbit_census(2, -1, 3)
    assert sorted(sum(r.orbit_sizes) for r in rows) == [1, 2, 6]


def test_census_size_guard():
    with pytest.raises(TooLarge):
        ffq_orbit_census(6, 1, 3)
