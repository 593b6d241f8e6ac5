import cv2
import numpy as np
import pytest
from PIL import Image as PILImage

from apps.imaging.exceptions import (
    ImageNotFound,
    InvalidRadius,
    InvalidThreshold,
    MaskTooSmall,
    PixelRangeError,
    ShapeMismatch,
    UnsupportedFormat,
)
from apps.imaging.schemas import ColorStats, Image, Mask
from apps.imaging.services import (
    dilate_mask,
    load_image,
    load_mask,
    masked_stats,
    save_image,
    save_mask,
    stats_from_pixels,
)
from core.exceptions import DataError, NonFiniteInput, NotPositiveSemidefinite


def test_sixteen_bit_png_reloads_to_within_one_step(tmp_path, rng):
    img = Image(pixels=rng.uniform(size=(17, 23, 3)))
    path = save_image(img, tmp_path / "deep.png", bit_depth=16)
    loaded = load_image(path)
    assert loaded.shape == (17, 23)
    np.testing.assert_allclose(loaded.pixels, img.pixels, atol=0.51 / 65535.0)


def test_eight_bit_png_keeps_channel_order(tmp_path):
    pixels = np.zeros((4, 4, 3))
    pixels[..., 0] = 1.0
    pixels[..., 2] = 0.2
    loaded = load_image(save_image(Image(pixels=pixels), tmp_path / "red.png"))
    np.testing.assert_allclose(loaded.pixels[0, 0], [1.0, 0.0, 51 / 255.0])


def test_mask_threshold_is_strict(tmp_path):
    data = np.array([[0, 127, 128, 255]], dtype=np.uint8)
    path = tmp_path / "mask.png"
    PILImage.fromarray(data, mode="L").save(path)
    np.testing.assert_array_equal(load_mask(path).bits, [[False, False, True, True]])
    np.testing.assert_array_equal(
        load_mask(path, threshold=0.9).bits, [[False, False, False, True]]
    )
    with pytest.raises(InvalidThreshold):
        load_mask(path, threshold=1.0)


def test_saved_mask_reloads(tmp_path, rng):
    mask = Mask(bits=rng.uniform(size=(9, 11)) > 0.5)
    np.testing.assert_array_equal(load_mask(save_mask(mask, tmp_path / "m.png")).bits, mask.bits)


def test_decode_failures(tmp_path):
    with pytest.raises(ImageNotFound):
        load_image(tmp_path / "missing.png")

    bmp = tmp_path / "image.bmp"
    PILImage.new("RGB", (4, 4)).save(bmp, format="BMP")
    with pytest.raises(UnsupportedFormat):
        load_image(bmp)

    broken = tmp_path / "broken.png"
    broken.write_bytes(b"\x89PNG\r\n\x1a\n" + b"\x00" * 10)
    with pytest.raises(DataError):
        load_image(broken)


def test_image_validation():
    with pytest.raises(PixelRangeError):
        Image(pixels=np.full((2, 2, 3), 1.5))
    with pytest.raises(NonFiniteInput):
        Image(pixels=np.full((2, 2, 3), np.nan))
    with pytest.raises(DataError):
        Image(pixels=np.zeros((2, 2)))


def test_stats_are_population_moments():
    pixels = np.array([[0.0, 0.0, 0.0], [1.0, 0.5, 0.0]] * 10)
    stats = stats_from_pixels(pixels)
    np.testing.assert_allclose(stats.mean, [0.5, 0.25, 0.0])
    np.testing.assert_allclose(np.diag(stats.cov), [0.25, 0.0625, 0.0])
    assert stats.cov[0, 1] == pytest.approx(0.125)
    assert stats.count == 20


def test_masked_stats_selects_region():
    pixels = np.zeros((8, 8, 3))
    pixels[:4] = 0.8
    bits = np.zeros((8, 8), dtype=bool)
    bits[:4] = True
    img, mask = Image(pixels=pixels), Mask(bits=bits)
    np.testing.assert_allclose(masked_stats(img, mask).mean, [0.8] * 3)
    np.testing.assert_allclose(masked_stats(img, mask, invert=True).mean, [0.0] * 3)


def test_masked_stats_errors():
    img = Image(pixels=np.zeros((8, 8, 3)))
    bits = np.zeros((8, 8), dtype=bool)
    bits[0, :8] = True
    bits[1, :7] = True
    with pytest.raises(MaskTooSmall):
        masked_stats(img, Mask(bits=bits))
    with pytest.raises(ShapeMismatch):
        masked_stats(img, Mask(bits=np.ones((4, 8), dtype=bool)))


def test_color_stats_rejects_indefinite_covariance():
    with pytest.raises(NotPositiveSemidefinite):
        ColorStats(mean=[0.5] * 3, cov=np.diag([1.0, -1.0, 1.0]), count=10)


def test_dilate_mask():
    bits = np.zeros((7, 7), dtype=bool)
    bits[3, 3] = True
    mask = Mask(bits=bits)
    assert dilate_mask(mask, 0).count == 1
    assert dilate_mask(mask, 1).count == 9
    assert dilate_mask(mask, 100).count == 49
    with pytest.raises(InvalidRadius):
        dilate_mask(mask, -1)


def test_sixteen_bit_full_scale_is_one(tmp_path):
    rgb = tmp_path / "rgb16.png"
    data = np.zeros((2, 3, 3), dtype=np.uint16)
    data[0, 0] = 65535
    data[1, 2, 2] = 32768
    # OpenCV stores BGR
    cv2.imwrite(str(rgb), data[:, :, ::-1])
    pixels = load_image(rgb).pixels
    np.testing.assert_array_equal(pixels[0, 0], [1.0, 1.0, 1.0])
    np.testing.assert_allclose(pixels[1, 2], [0.0, 0.0, 32768 / 65535.0])

    gray = tmp_path / "gray16.png"
    cv2.imwrite(str(gray), np.array([[65535, 0]], dtype=np.uint16))
    np.testing.assert_array_equal(load_image(gray).pixels, [[[1.0] * 3, [0.0] * 3]])


def test_jpeg_loads_as_rgb(tmp_path):
    path = tmp_path / "flat.jpg"
    PILImage.new("RGB", (8, 6), (255, 0, 128)).save(path, format="JPEG", quality=100)
    img = load_image(path)
    assert img.shape == (6, 8)
    np.testing.assert_allclose(img.pixels[3, 4], [1.0, 0.0, 128 / 255.0], atol=0.02)


def test_masked_stats_matches_pixel_loop(rng):
    for _ in range(20):
        img = Image(pixels=rng.uniform(size=(32, 32, 3)))
        mask = Mask(bits=rng.uniform(size=(32, 32)) > rng.uniform(0.1, 0.9))
        selected = [
            img.pixels[i, j] for i in range(32) for j in range(32) if mask.bits[i, j]
        ]
        mean = sum(selected) / len(selected)
        cov = sum(np.outer(p - mean, p - mean) for p in selected) / len(selected)

        stats = masked_stats(img, mask)
        assert stats.count == len(selected)
        np.testing.assert_allclose(stats.mean, mean, atol=1e-12)
        np.testing.assert_allclose(stats.cov, cov, atol=1e-12)
        assert np.all((stats.mean >= 0.0) & (stats.mean <= 1.0))
        assert np.diag(stats.cov).max() <= 0.25 + 1e-9
        assert np.linalg.eigvalsh(stats.cov).min() >= -1e-12


def test_channel_variance_caps_at_a_quarter_but_eigenvalues_do_not():
    pixels = np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]] * 8)
    stats = stats_from_pixels(pixels)
    np.testing.assert_allclose(stats.mean, [0.5] * 3)
    np.testing.assert_allclose(stats.cov, np.full((3, 3), 0.25))
    # Trace bounds the spectrum: 3 * 0.25
    np.testing.assert_allclose(np.linalg.eigvalsh(stats.cov), [0.0, 0.0, 0.75], atol=1e-12)
