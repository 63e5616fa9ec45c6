"""Command-line interface: files, sidecars, exit codes, round-trips.

All invocations run in-process through cli.main so exit codes and stdout
can be asserted directly; map files land in pytest temp directories.
"""

import json
import os

import numpy as np
import pytest

from vectorlight.cli import load_map_csv, main


def run(args):
    return main([str(a) for a in args])


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_values(path):
    return np.loadtxt(path, delimiter=",")


# -------------------------------------------------------------- field-map


def test_field_map_azimuthal_ez_is_zero_map(tmp_path):
    code = run(["field-map", "--beam", "azimuthal", "--component", "Ez",
                "--resolution", "32,32", "-o", tmp_path])
    assert code == 0
    side = read_json(tmp_path / "field_Ez.json")
    assert side["scale_factor"] == 0.0
    assert side["tool_version"]
    vals = read_values(tmp_path / "field_Ez.csv")
    assert vals.shape == (32, 32)
    assert np.all(vals == 0.0)


def test_field_map_anti_aligned_vortex_fills_center(tmp_path):
    code = run(["field-map", "--beam", "lg:1,0", "--sigma", "-1",
                "--component", "Ez", "--resolution", "64,64", "-o", tmp_path])
    assert code == 0
    vals = read_values(tmp_path / "field_Ez.csv")
    c = 64 // 2
    # longitudinal field peaks in the four cells around the vortex axis
    ix, iy = np.unravel_index(np.argmax(vals), vals.shape)
    assert ix in (c - 1, c) and iy in (c - 1, c)


def test_field_map_emits_all_components_by_default(tmp_path):
    code = run(["field-map", "--beam", "lg:1,0", "--resolution", "16,16",
                "-o", tmp_path])
    assert code == 0
    stems = {"field_Ez", "field_sigma_plus", "field_sigma_minus"}
    for stem in stems:
        assert (tmp_path / f"{stem}.csv").exists()
        assert (tmp_path / f"{stem}.json").exists()
    # no leftover temporary files from the atomic writes
    assert not [p for p in os.listdir(tmp_path) if ".tmp." in p]


def test_missing_beam_exits_2_and_names_the_field(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        run(["field-map", "-o", tmp_path])
    assert info.value.code == 2
    assert "--beam" in capsys.readouterr().err


def test_malformed_beam_flag_exits_2(tmp_path, capsys):
    assert run(["field-map", "--beam", "lg:x", "-o", tmp_path]) == 2
    assert "--beam" in capsys.readouterr().err


# --------------------------------------------------------------- run files


def test_run_file_unknown_field_is_rejected_with_path(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"beam": {"type": "lg", "l": 1, "waste_um": 1.0}}))
    assert run(["field-map", "--run-file", bad, "-o", tmp_path]) == 2
    assert "beam.waste_um" in capsys.readouterr().err


def test_run_file_invalid_json_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "beam": {,}\n}\n')
    assert run(["field-map", "--run-file", bad, "-o", tmp_path]) == 2
    assert "line 2" in capsys.readouterr().err


def test_sidecar_run_echo_reproduces_bit_identical_csv(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert run(["transition-map", "--beam", "lg:1,0", "--sigma", "-1",
                "--dm", "0", "--resolution", "48,48", "-o", out1]) == 0
    side = read_json(out1 / "mu_dm_0.json")
    echo = tmp_path / "echo.json"
    echo.write_text(json.dumps(side["run"]))
    assert run(["transition-map", "--run-file", echo, "-o", out2]) == 0
    assert (out1 / "mu_dm_0.csv").read_bytes() == (out2 / "mu_dm_0.csv").read_bytes()
    assert (out1 / "mu_dm_0.json").read_bytes() == (out2 / "mu_dm_0.json").read_bytes()


# ---------------------------------------------------------- transition-map


def test_transition_map_emits_all_addressable_dm(tmp_path):
    assert run(["transition-map", "--beam", "lg:1,0", "--resolution", "16,16",
                "-o", tmp_path]) == 0
    for stem in ("mu_dm_m2", "mu_dm_m1", "mu_dm_0", "mu_dm_p1", "mu_dm_p2"):
        assert (tmp_path / f"{stem}.csv").exists()
    side = read_json(tmp_path / "mu_dm_p2.json")
    assert side["dm"] == 2
    assert side["transition"]["m2"] == "5/2"
    assert side["geometry"]["theta_deg"] == 0.0


def test_transition_map_anti_aligned_dm0_peaks_on_axis(tmp_path):
    assert run(["transition-map", "--beam", "lg:1,0", "--sigma", "-1",
                "--dm", "0", "--resolution", "64,64", "-o", tmp_path]) == 0
    vals = read_values(tmp_path / "mu_dm_0.csv")
    c = 64 // 2
    ix, iy = np.unravel_index(np.argmax(vals), vals.shape)
    assert ix in (c - 1, c) and iy in (c - 1, c)


def test_transition_map_azimuthal_dm0_is_zero_map(tmp_path):
    assert run(["transition-map", "--beam", "azimuthal", "--dm", "0",
                "--resolution", "32,32", "-o", tmp_path]) == 0
    side = read_json(tmp_path / "mu_dm_0.json")
    assert side["scale_factor"] == 0.0
    assert np.all(read_values(tmp_path / "mu_dm_0.csv") == 0.0)


def test_transition_map_radial_dm0_peaks_on_axis(tmp_path):
    assert run(["transition-map", "--beam", "radial", "--dm", "0",
                "--resolution", "64,64", "-o", tmp_path]) == 0
    vals = read_values(tmp_path / "mu_dm_0.csv")
    c = 64 // 2
    ix, iy = np.unravel_index(np.argmax(vals), vals.shape)
    assert ix in (c - 1, c) and iy in (c - 1, c)


def test_invalid_quantum_numbers_exit_2(tmp_path, capsys):
    assert run(["transition-map", "--beam", "lg:1,0", "--j2", "2/3",
                "-o", tmp_path]) == 2
    assert "transition" in capsys.readouterr().err
    assert run(["transition-map", "--beam", "lg:1,0", "--m1", "3/2",
                "--dm", "0", "-o", tmp_path]) == 2


# ------------------------------------------------------------ sideband-map


def test_sideband_map_writes_carrier_and_three_modes(tmp_path):
    assert run(["sideband-map", "--beam", "lg:1,0", "--resolution", "32,32",
                "-o", tmp_path]) == 0
    for stem in ("sideband_carrier", "sideband_bsb_X", "sideband_bsb_Y",
                 "sideband_bsb_Z"):
        assert (tmp_path / f"{stem}.csv").exists()
    carrier = read_json(tmp_path / "sideband_carrier.json")
    bsb = read_json(tmp_path / "sideband_bsb_X.json")
    assert carrier["eta_rescaled"] is False
    assert bsb["eta_rescaled"] is True
    assert bsb["trap"]["mass_amu"] == 40.0


def test_sideband_map_vortex_center_structure(tmp_path):
    assert run(["sideband-map", "--beam", "lg:1,0", "--resolution", "64,64",
                "-o", tmp_path]) == 0
    c = 64 // 2
    carrier = read_values(tmp_path / "sideband_carrier.csv")
    bsb_x = read_values(tmp_path / "sideband_bsb_X.csv")
    # transverse sideband peaks exactly where the carrier vanishes
    ix, iy = np.unravel_index(np.argmax(bsb_x), bsb_x.shape)
    assert ix in (c - 1, c) and iy in (c - 1, c)
    assert carrier[c - 1:c + 1, c - 1:c + 1].max() < 0.2
    assert carrier.max() == 1.0


def test_ground_state_rsb_maps_are_zero(tmp_path):
    assert run(["sideband-map", "--beam", "lg:1,0", "--branch", "rsb",
                "--n", "0", "--resolution", "16,16", "-o", tmp_path]) == 0
    for mode in "XYZ":
        side = read_json(tmp_path / f"sideband_rsb_{mode}.json")
        assert side["scale_factor"] == 0.0
        assert np.all(read_values(tmp_path / f"sideband_rsb_{mode}.csv") == 0.0)
    # carrier still present and nonzero
    assert read_json(tmp_path / "sideband_carrier.json")["scale_factor"] > 0


def test_gaussian_z_sideband_proportional_to_carrier_when_weakly_focused(tmp_path):
    # soft focus: the traveling-wave phase dominates the axial gradient
    assert run(["sideband-map", "--beam", "lg:0,0", "--waist-um", "72.9",
                "--resolution", "24,24", "-o", tmp_path]) == 0
    carrier = read_values(tmp_path / "sideband_carrier.csv")
    bsb_z = read_values(tmp_path / "sideband_bsb_Z.csv")
    mask = carrier > 0.01
    ratio = bsb_z[mask] / carrier[mask]
    assert np.ptp(ratio) / np.mean(ratio) < 1e-3


# ------------------------------------------------------------------ point


def test_point_vortex_center_has_single_open_channel(capsys):
    assert run(["point", "--beam", "lg:1,0", "--sigma", "+1"]) == 0
    rec = json.loads(capsys.readouterr().out)
    mu = rec["mu_by_dm"]
    assert sorted(mu) == ["+0", "+1", "+2", "-1", "-2"]
    nonzero = [dm for dm, v in mu.items() if v != [0.0, 0.0]]
    assert nonzero == ["+2"]
    assert rec["sidebands"]["carrier"] == [0.0, 0.0]
    assert rec["sidebands"]["bsb_X"] != [0.0, 0.0]
    assert rec["sidebands"]["rsb_X"] == [0.0, 0.0]  # no level below n=0


def test_point_azimuthal_longitudinal_component_is_zero(capsys):
    assert run(["point", "--beam", "azimuthal"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["components"]["z"] == [0.0, 0.0]
    assert rec["position_um"] == [0.0, 0.0, 0.0]


def test_point_accepts_off_axis_position(capsys):
    assert run(["point", "--beam", "lg:1,0", "--position-um",
                "0.3,-0.2,0.1"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["position_um"] == [0.3, -0.2, 0.1]
    jac = np.array(rec["jacobian"])
    assert jac.shape == (3, 3, 2)
    assert np.any(jac != 0.0)


# ------------------------------------------------- compare, gnuplot-matrix


def test_compare_identical_maps_reports_zero(tmp_path, capsys):
    assert run(["field-map", "--beam", "lg:1,0", "--component", "sigma+",
                "--resolution", "24,24", "-o", tmp_path]) == 0
    capsys.readouterr()
    path = tmp_path / "field_sigma_plus.csv"
    assert run(["compare", path, path]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["max_abs_diff"] == 0.0
    assert stats["rms_diff"] == 0.0


def test_compare_grid_mismatch_exits_2(tmp_path, capsys):
    assert run(["field-map", "--beam", "lg:1,0", "--component", "sigma+",
                "--resolution", "24,24", "-o", tmp_path / "a"]) == 0
    assert run(["field-map", "--beam", "lg:1,0", "--component", "sigma+",
                "--resolution", "16,16", "-o", tmp_path / "b"]) == 0
    code = run(["compare", tmp_path / "a" / "field_sigma_plus.csv",
                tmp_path / "b" / "field_sigma_plus.csv"])
    assert code == 2


def test_compare_rejects_non_map_file(tmp_path, capsys):
    junk = tmp_path / "junk.csv"
    junk.write_text("this,is,not\na,map,file\n")
    assert run(["compare", junk, junk]) == 2


def test_loaded_map_matches_written_dataset(tmp_path):
    assert run(["field-map", "--beam", "lg:1,0", "--component", "Ez",
                "--resolution", "16,16", "-o", tmp_path]) == 0
    d = load_map_csv(str(tmp_path / "field_Ez.csv"))
    assert d.values.shape == (16, 16)
    assert float(np.max(d.values)) == 1.0
    assert d.observable_name == "field:z"
    assert d.x_centers[0] == pytest.approx(-2e-6 + 2e-6 / 16, rel=1e-12)


def test_gnuplot_matrix_layout(tmp_path):
    assert run(["field-map", "--beam", "lg:1,0", "--component", "Ez",
                "--resolution", "8,12", "-o", tmp_path]) == 0
    out = tmp_path / "mat.dat"
    assert run(["gnuplot-matrix", tmp_path / "field_Ez.csv", out]) == 0
    lines = out.read_text().strip().splitlines()
    first = lines[0].split()
    assert first[0] == "8" and len(first) == 9  # nx then x coordinates
    assert len(lines) == 1 + 12  # one row per y value
    assert all(len(line.split()) == 9 for line in lines[1:])


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        run(["--version"])
    assert info.value.code == 0
