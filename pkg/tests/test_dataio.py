import numpy as np
import pytest

from frfstats import (
    Dataset,
    FRFSet,
    ParseError,
    SyntheticSpec,
    derive_grid,
    generate_synthetic,
    load_dataset,
    load_frf,
    lowpass_mean_frf,
    save_dataset,
)

from support import EXPERIMENT_FREQS


def example_dataset():
    grid = derive_grid(EXPERIMENT_FREQS)
    rng = np.random.default_rng(7)
    shape1, shape2 = (4, grid.m), (3, grid.m)
    groups = {
        "control": FRFSet(rng.standard_normal(shape1) + 1j * rng.standard_normal(shape1)),
        "patient": FRFSet(rng.standard_normal(shape2) + 1j * rng.standard_normal(shape2)),
    }
    return Dataset(grid=grid, groups=groups, metadata={"site": "lab-3", "task": "sway"})


@pytest.mark.parametrize("format", ["csv", "json"])
def test_roundtrip_is_exact(tmp_path, format):
    dataset = example_dataset()
    path = tmp_path / f"data.{format}"
    save_dataset(dataset, path)
    loaded = load_dataset(path)
    assert np.array_equal(loaded.grid.frequencies, dataset.grid.frequencies)
    assert loaded.grid.sample_rate == dataset.grid.sample_rate
    assert loaded.grid.n_samples == dataset.grid.n_samples
    assert set(loaded.groups) == set(dataset.groups)
    for name in dataset.groups:
        assert np.array_equal(loaded.groups[name].values, dataset.groups[name].values)
    assert loaded.metadata == dataset.metadata


def test_minimal_json_dataset(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text('{"frequencies": [1.0], "groups": {"g": [[[1, 0]]]}}')
    dataset = load_dataset(path)
    assert dataset.grid.m == 1
    assert dataset.grid.sample_rate == pytest.approx(10.0)
    assert dataset.groups["g"].n == 1
    assert dataset.groups["g"].values[0, 0] == 1.0 + 0.0j
    assert dataset.metadata == {}


def test_csv_default_rate_and_metadata(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text(
        "# note=hello world\n"
        "freq_hz,re_0,im_0\n"
        ",1.0,\n"
        "g,2.0,-3.0\n"
        "g,0.5,0.25\n"
    )
    dataset = load_dataset(path)
    assert dataset.grid.sample_rate == pytest.approx(10.0)
    assert dataset.metadata == {"note": "hello world"}
    assert np.array_equal(dataset.groups["g"].values[:, 0], [2.0 - 3.0j, 0.5 + 0.25j])


def test_csv_bad_cell_names_line(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("freq_hz,re_0,im_0\n,1.0,\ng,2.0,oops\n")
    with pytest.raises(ParseError, match="line 3"):
        load_dataset(path)


def test_csv_short_row_names_line(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("freq_hz,re_0,im_0,re_1,im_1\n,0.3,,0.5,\ng,1.0,2.0\n")
    with pytest.raises(ParseError, match="line 3"):
        load_dataset(path)


def test_json_ragged_sample_rejected(tmp_path):
    path = tmp_path / "data.json"
    path.write_text('{"frequencies": [0.3, 0.5], "groups": {"g": [[[1, 0]]]}}')
    with pytest.raises(ParseError, match="'g' sample 0"):
        load_dataset(path)


def test_unknown_suffix_needs_format(tmp_path):
    with pytest.raises(ValueError, match="infer"):
        load_dataset(tmp_path / "data.txt")


def test_dataset_rejects_width_mismatch():
    grid = derive_grid([0.3, 0.5])
    with pytest.raises(ValueError, match="grid has 2"):
        Dataset(grid=grid, groups={"g": FRFSet(np.ones((2, 3), dtype=complex))})


def test_load_frf_json_and_csv(tmp_path):
    json_path = tmp_path / "test.json"
    json_path.write_text('{"values": [[1.0, -2.0], [0.5, 0.0]]}')
    csv_path = tmp_path / "test.csv"
    csv_path.write_text("# test FRF\n1.0,-2.0\n0.5,0.0\n")
    expected = np.array([1.0 - 2.0j, 0.5 + 0.0j])
    assert np.array_equal(load_frf(json_path).values, expected)
    assert np.array_equal(load_frf(csv_path).values, expected)


def test_load_frf_bad_row(tmp_path):
    path = tmp_path / "test.csv"
    path.write_text("1.0,-2.0\n0.5\n")
    with pytest.raises(ParseError, match="line 2"):
        load_frf(path)


def test_synthetic_without_noise_is_scaled_mean():
    mean = np.array([1.0 + 1.0j, -0.5 + 2.0j])
    frf_set = generate_synthetic(SyntheticSpec(mean_frf=mean, noise_std=0.0, n=3, gain_factor=1.6))
    assert frf_set.n == 3
    assert np.allclose(frf_set.values, 1.6 * mean, rtol=0, atol=0)


def test_synthetic_noise_statistics():
    mean = np.array([2.0 - 1.0j])
    n = 10_000
    frf_set = generate_synthetic(SyntheticSpec(mean_frf=mean, noise_std=0.5, n=n), seed=3)
    sample_mean = frf_set.values.mean(axis=0)[0]
    bound = 5 * 0.5 / np.sqrt(n)
    assert abs(sample_mean.real - 2.0) < bound
    assert abs(sample_mean.imag + 1.0) < bound
    assert np.std(frf_set.values.real) == pytest.approx(0.5, rel=0.05)


def test_synthetic_is_deterministic_per_seed():
    spec = SyntheticSpec(mean_frf=np.array([1.0 + 0.0j]), noise_std=1.0, n=5)
    a = generate_synthetic(spec, seed=11).values
    b = generate_synthetic(spec, seed=11).values
    c = generate_synthetic(spec, seed=12).values
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_synthetic_spec_validation():
    mean = np.array([1.0 + 0.0j])
    with pytest.raises(ValueError, match="noise_std"):
        SyntheticSpec(mean_frf=mean, noise_std=-0.1, n=2)
    with pytest.raises(ValueError, match="n must"):
        SyntheticSpec(mean_frf=mean, noise_std=0.1, n=0)
    with pytest.raises(ValueError, match="gain_factor"):
        SyntheticSpec(mean_frf=mean, noise_std=0.1, n=2, gain_factor=0.0)
    with pytest.raises(ValueError, match="vector"):
        SyntheticSpec(mean_frf=np.ones((2, 2)), noise_std=0.1, n=2)


def test_lowpass_mean_frf_shape():
    grid = derive_grid([0.5, 1.0, 2.0])
    mean = lowpass_mean_frf(grid)
    assert mean.shape == (3,)
    assert mean[1] == pytest.approx(1.0 / (1.0 + 1.0j))
    assert abs(mean[0]) > abs(mean[2])
