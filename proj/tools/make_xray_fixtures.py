#!/usr/bin/env python3
"""Convert the computed-radiography samples shipped in the `pydicom-data`
wheel into 8-bit grayscale PNG fixtures for the acceptance suite.

    pip install pydicom pydicom-data
    python3 tools/make_xray_fixtures.py tests/data/xray

The DICOM VOI window is applied, MONOCHROME1 data is inverted so bone is
bright, and each image is 2x2 box-downsampled.
"""
import argparse
import pathlib

import numpy as np
import pydicom
from PIL import Image

SOURCES = {
    "RG1_UNCR.dcm": "cr_chest_rg1.png",
    "RG3_UNCR.dcm": "cr_tibia_rg3.png",
}


def locate(name):
    try:
        from pydicom.data import get_testdata_file
        path = get_testdata_file(name)
        if path:
            return path
    except Exception:
        pass
    import data_store  # provided by pydicom-data
    return str(pathlib.Path(data_store.__file__).parent / "data" / name)


def to_u8(ds):
    raw = ds.pixel_array.astype(np.float64)
    center = float(ds.WindowCenter)
    width = float(ds.WindowWidth)
    lo = center - width / 2.0
    scaled = np.clip((raw - lo) / width, 0.0, 1.0)
    if ds.PhotometricInterpretation == "MONOCHROME1":
        scaled = 1.0 - scaled
    h, w = scaled.shape
    scaled = scaled[: h - h % 2, : w - w % 2]
    scaled = scaled.reshape(h // 2, 2, w // 2, 2).mean(axis=(1, 3))
    return np.rint(scaled * 255.0).astype(np.uint8)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("out_dir")
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for src, dst in SOURCES.items():
        img = to_u8(pydicom.dcmread(locate(src)))
        Image.fromarray(img, mode="L").save(out / dst, optimize=True)
        print(f"{dst}: {img.shape[1]}x{img.shape[0]} mean={img.mean():.2f}")


if __name__ == "__main__":
    main()
