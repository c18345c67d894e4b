import numpy as np
import pytest

import cchs


def test_module_surface():
    assert cchs.METHODS == ("ched", "mched", "mased1", "mased2", "mased3")
    assert cchs.FLOW_PRETREAT_SCALE == 6.0


def test_transform_of_constant_image():
    img = np.full((16, 20, 3), [0.2, 0.3, 0.4])
    a = cchs.cchs_transform(img, 2.0, 2.0)
    assert a.shape == (6, 16, 20)
    np.testing.assert_allclose(a[0], 0.2, atol=1e-12)
    np.testing.assert_allclose(a[3:], 0.0, atol=1e-12)


def test_clifford_product_scalar_part():
    sc, bi = cchs.clifford_product([1, 2, 3, 0, 0, 0], [1, 0, 0])
    assert sc == pytest.approx(1.0)
    assert len(bi) == 12


@pytest.mark.parametrize("method", ["ched", "mched", "mased1", "mased2", "mased3"])
def test_detect_finds_the_step(method):
    img, truth = cchs.step_edge(48, 24, [1, 0, 0], [0, 0, 1], 24.0)
    assert img.shape == (24, 48, 3)
    out = cchs.detect(img, [1, 0, 0], method=method, colorspace="raw-rgb")
    edges = out["edges"]
    assert edges.dtype == bool
    assert out["magnitude"].shape == (24, 48)
    assert edges[4:20, 23:25].any(axis=1).all()
    assert truth[:, 24].all()


def test_constant_image_has_no_edges():
    img = np.full((16, 16, 3), 0.5)
    assert not cchs.detect(img, [1, 0, 0])["edges"].any()


def test_lab_conversion_of_white():
    lab = cchs.srgb_to_lab([1, 1, 1])
    assert lab[0] == pytest.approx(100.0, rel=1e-4)
    norm = cchs.to_lab(np.ones((8, 8, 3)))
    np.testing.assert_allclose(norm[..., 0], 1.0, rtol=1e-4)


def test_noise_and_metrics():
    img, truth = cchs.rectangles()
    noisy = cchs.corrupt(img, "gaussian", 0.01, seed=4)
    again = cchs.corrupt(img, "gaussian", 0.01, seed=4)
    np.testing.assert_array_equal(noisy, again)
    assert 0 < cchs.snr(img, noisy) < 99
    gray = img.mean(axis=2)
    assert cchs.psnr(gray, gray) == 99.0
    assert cchs.ssim(gray, gray) == pytest.approx(1.0)
    assert cchs.fsim(gray, gray) == pytest.approx(1.0)
    red = truth["red"]
    assert cchs.pratt_f(red, red) == 1.0
    assert cchs.pratt_f(np.roll(red, 1, axis=1), red) < 1.0


def test_flow_on_translated_square():
    first, second = cchs.translated_square_pair(2.0, 0.0)
    u, v, valid = cchs.color_flow(first, second, list(cchs.SQUARE_COLOR))
    assert u.shape == first.shape[:2]
    assert valid.any()
    assert u[valid].mean() > 0.5
    gray = first.mean(axis=2)
    u0, v0, valid0 = cchs.lk_flow(gray, gray)
    assert np.all(u0[valid0] == 0.0)


def test_errors_map_to_python_exceptions(tmp_path):
    with pytest.raises(ValueError):
        cchs.detect(np.full((16, 16, 3), 0.5), [1, 0, 0], method="sobel")
    with pytest.raises(ValueError):
        cchs.detect(np.zeros((16, 16)), [1, 0, 0])
    with pytest.raises(OSError):
        cchs.load_image(str(tmp_path / "missing.png"))


def test_image_round_trip(tmp_path):
    img, _ = cchs.rectangles(64, 48)
    path = str(tmp_path / "r.png")
    cchs.save_image(img, path)
    np.testing.assert_allclose(cchs.load_image(path), img, atol=1 / 65535)
