import numpy as np
import pytest

from contourdenoise import (
    BoundaryPolicy,
    ImageFormatError,
    PatchRef,
    extract_patch,
    load_image,
    pixel_at,
    save_image,
)
from contourdenoise.image import as_image, quantize


def test_load_minimal_p5():
    img = load_image(b"P5\n1 1\n255\n\x80")
    assert img.shape == (1, 1)
    assert img[0, 0] == 128.0


def test_round_trip_byte_identical():
    data = b"P5\n3 2\n255\n" + bytes([0, 10, 20, 30, 40, 255])
    assert save_image(load_image(data)) == data


def test_round_trip_random_files(rng):
    for _ in range(20):
        w, h = rng.integers(1, 30, size=2)
        payload = rng.integers(0, 256, size=w * h).astype(np.uint8).tobytes()
        data = f"P5\n{w} {h}\n255\n".encode() + payload
        assert save_image(load_image(data)) == data


def test_reader_accepts_comments_and_whitespace():
    data = b"P5 # magic\n# a comment line\n  2\t1 \n255\n" + bytes([7, 9])
    img = load_image(data)
    assert img.tolist() == [[7.0, 9.0]]


def test_p6_rejected():
    with pytest.raises(ImageFormatError, match="P6"):
        load_image(b"P6\n1 1\n255\n\x01\x02\x03")


def test_header_errors_name_the_field():
    with pytest.raises(ImageFormatError, match="width"):
        load_image(b"P5\nabc 1\n255\n\x00")
    with pytest.raises(ImageFormatError, match="maxval"):
        load_image(b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(ImageFormatError, match="payload"):
        load_image(b"P5\n2 2\n255\n\x00\x00")
    with pytest.raises(ImageFormatError, match="payload"):
        load_image(b"P5\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(ImageFormatError, match="height"):
        load_image(b"P5\n3\n")


def test_save_rounds_half_up():
    assert save_image(np.array([[127.5]]))[-1:] == b"\x80"
    assert save_image(np.array([[126.5]]))[-1:] == b"\x7f"
    assert save_image(np.array([[0.49]]))[-1:] == b"\x00"


def test_save_payload_row_major():
    img = np.array([[0.0, 255.0], [0.0, 255.0]])
    assert save_image(img)[-4:] == bytes([0, 255, 0, 255])


def test_round_trip_all_256_levels():
    levels = np.arange(256, dtype=np.float64).reshape(16, 16)
    back = load_image(save_image(levels))
    assert np.array_equal(back, levels)
    assert sorted(set(back.ravel().tolist())) == [float(v) for v in range(256)]


def test_png_round_trip(rng):
    img = rng.integers(0, 256, size=(9, 13)).astype(np.float64)
    back = load_image(save_image(img, "png"))
    assert np.array_equal(back, img)


def test_png_non_grayscale_rejected():
    import io

    from PIL import Image as PILImage

    buf = io.BytesIO()
    PILImage.new("RGB", (2, 2)).save(buf, format="PNG")
    with pytest.raises(ImageFormatError, match="bit depth|mode"):
        load_image(buf.getvalue())


def test_save_unknown_format():
    with pytest.raises(ValueError, match="format"):
        save_image(np.zeros((2, 2)), "bmp")


def test_file_round_trip_sniffs_format(tmp_path, rng):
    from contourdenoise import load_image_file, save_image_file

    img = rng.integers(0, 256, size=(6, 11)).astype(np.float64)
    for name in ("img.pgm", "img.png"):
        path = tmp_path / name
        save_image_file(img, path)
        assert np.array_equal(load_image_file(path), img)
    with pytest.raises(ValueError, match="suffix"):
        save_image_file(img, tmp_path / "img.tiff")


def test_pixel_at_clamps():
    img = np.arange(12, dtype=np.float64).reshape(3, 4)
    assert pixel_at(img, -1, -1) == img[0, 0]
    assert pixel_at(img, 4, 0) == img[0, 3]
    assert pixel_at(img, 0, 99) == img[2, 0]
    for y in range(3):
        for x in range(4):
            assert pixel_at(img, x, y, BoundaryPolicy.CLAMP) == img[y, x]


def test_pixel_at_fuzz_never_escapes(rng):
    img = rng.random((5, 7)) * 255
    for _ in range(500):
        x = int(rng.integers(-70, 70))
        y = int(rng.integers(-50, 50))
        v = pixel_at(img, x, y)
        assert v == img[min(max(y, 0), 4), min(max(x, 0), 6)]


def test_extract_patch_constant():
    img = np.full((6, 6), 100.0)
    assert extract_patch(img, PatchRef(3, 3, 3)).tolist() == [100.0] * 9


def test_extract_patch_corner_clamp():
    img = np.array([[1.0, 2.0], [3.0, 4.0]])
    got = extract_patch(img, PatchRef(0, 0, 3))
    assert got.tolist() == [1, 1, 2, 1, 1, 2, 3, 3, 4]


def test_extract_patch_interior_matches_direct_indexing(rng):
    img = rng.random((8, 8)) * 255
    for cy in range(2, 6):
        for cx in range(2, 6):
            got = extract_patch(img, PatchRef(cx, cy, 5))
            want = img[cy - 2:cy + 3, cx - 2:cx + 3].ravel()
            assert np.array_equal(got, want)


def test_extract_patch_size_validation():
    img = np.zeros((4, 4))
    with pytest.raises(ValueError):
        extract_patch(img, PatchRef(1, 1, 4))
    with pytest.raises(ValueError):
        extract_patch(img, PatchRef(1, 1, 1))


def test_as_image_validation():
    with pytest.raises(ValueError):
        as_image(np.zeros((2, 2, 3)))
    with pytest.raises(ValueError):
        as_image(np.array([[-1.0, 0.0]]))
    with pytest.raises(ValueError):
        as_image(np.array([[0.0, 256.0]]))
    with pytest.raises(ValueError):
        as_image(np.array([[np.nan, 0.0]]))


def test_quantize_clamps():
    assert quantize(np.array([[-3.0, 255.4, 254.5]])).tolist() == [[0, 255, 255]]
