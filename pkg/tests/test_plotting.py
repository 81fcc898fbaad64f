from metricglue.numerics import INF
from metricglue.plotting import distance_heatmap, save_heatmaps
from metricglue.space import discrete_space, discretize_segment, two_point


def test_heatmaps_written(tmp_path):
    paths = save_heatmaps({"a": two_point(INF), "b": discretize_segment(1.0, 0.01)}, tmp_path, "demo")
    assert [p.rsplit("/", 1)[1] for p in paths] == ["demo-a.png", "demo-b.png"]
    for p in paths:
        with open(p, "rb") as fh:
            assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


def test_heatmap_of_empty_space():
    fig = distance_heatmap(discrete_space(0))
    assert fig.axes
