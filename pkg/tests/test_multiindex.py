import numpy as np
import pytest

from negmultinom.multiindex import as_multiindex, box_array, box_size, iter_box, multiindices_upto


def test_odometer_order():
    assert list(iter_box([1, 2])) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_empty_and_zero_bounds():
    assert list(iter_box([])) == [()]
    assert list(iter_box([0, 0])) == [(0, 0)]


@pytest.mark.parametrize("bounds", [[3], [2, 0, 1], [1, 1, 1, 1], [4, 2]])
def test_box_visits_each_point_once(bounds):
    pts = list(iter_box(bounds))
    assert len(pts) == len(set(pts)) == box_size(bounds)
    assert all(all(0 <= k <= b for k, b in zip(pt, bounds)) for pt in pts)
    np.testing.assert_array_equal(box_array(bounds), np.array(pts))


def test_multiindices_upto():
    ps = list(multiindices_upto(3, 4))
    assert len(ps) == 35  # C(4 + 3, 3)
    assert all(sum(p) <= 4 for p in ps)


def test_as_multiindex_rejects_bad_entries():
    with pytest.raises(ValueError):
        as_multiindex([1, -1])
    with pytest.raises(ValueError):
        as_multiindex([1.5])
