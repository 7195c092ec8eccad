//! Command-line behavior: outputs, formats, exit codes and files.

use std::io::Cursor;

use hclcolor_cli::cli::{run, Outcome, EXIT_IO, EXIT_OK, EXIT_VALIDATION};

fn hcl(args: &[&str]) -> Outcome {
    hcl_stdin(args, "")
}

fn hcl_stdin(args: &[&str], input: &str) -> Outcome {
    let mut argv = vec!["hclcolor"];
    argv.extend_from_slice(args);
    run(argv, &mut Cursor::new(input.as_bytes().to_vec()))
}

fn ok_lines(args: &[&str]) -> Vec<String> {
    let out = hcl(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout.lines().map(str::to_string).collect()
}

#[test]
fn generate_prints_n_lines() {
    for n in [1, 4, 9] {
        let lines = ok_lines(&["generate", "sequential", "--palette", "Blues 2", "-n", &n.to_string()]);
        assert_eq!(lines.len(), n);
    }
    assert!(ok_lines(&["generate", "qualitative", "--palette", "Dark 3", "-n", "0"]).is_empty());
}

#[test]
fn generate_grays_and_json() {
    let grays = ok_lines(&["generate", "sequential", "--c1", "0", "--c2", "0", "-n", "5"]);
    assert_eq!(grays.len(), 5);
    for g in &grays {
        assert!(g[1..3] == g[3..5] && g[3..5] == g[5..7], "{g}");
    }
    let out = hcl(&["generate", "qualitative", "--palette", "Dark 3", "-n", "4", "--format", "json"]);
    let v: Vec<String> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v, ["#E16A86", "#909800", "#00AD9A", "#9183E6"]);
}

#[test]
fn generate_rev_alpha_and_svg() {
    let fwd = ok_lines(&["generate", "qualitative", "--palette", "Dark 3", "-n", "4"]);
    let mut rev = ok_lines(&["generate", "qualitative", "--palette", "Dark 3", "-n", "4", "--rev"]);
    rev.reverse();
    assert_eq!(fwd, rev);
    let alpha = ok_lines(&["generate", "qualitative", "--palette", "Dark 3", "-n", "2", "--alpha", "0.5"]);
    assert_eq!(alpha, ["#E16A8680", "#00AD9A80"].map(String::from));
    let svg = hcl(&["generate", "diverging", "--palette", "Blue-Red", "-n", "5", "--format", "svg"]);
    assert!(svg.stdout.starts_with("<svg") || svg.stdout.starts_with("<?xml"), "{}", svg.stdout);
    assert_eq!(svg.stdout.matches("<rect").count(), 5);
}

#[test]
fn negative_hue_flags_are_numbers() {
    let a = ok_lines(&["generate", "sequential", "--h1", "-100", "--c1", "40", "-n", "3"]);
    let b = ok_lines(&["generate", "sequential", "--h1", "260", "--c1", "40", "-n", "3"]);
    assert_eq!(a, b);
}

#[test]
fn validation_errors_exit_2() {
    let out = hcl(&["generate", "qualitative", "--palette", "Dark 9", "-n", "3"]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("Dark 3"), "{}", out.stderr);
    for args in [
        &["generate", "qualitative", "--palette", "Blues 2", "-n", "3"][..],
        &["generate", "rainbow", "-n", "3"],
        &["generate", "qualitative", "-n", "3", "--alpha", "2"],
        &["generate", "sequential", "--p1", "-1", "-n", "3"],
        &["generate", "qualitative", "-n", "many"],
        &["cvd", "deutan", "1.5", "#FF0000"],
        &["cvd", "greenish", "1", "#FF0000"],
        &["cvd", "deutan", "1", "#GG0000"],
        &["manip", "lighten", "0.2", "#61A9D9", "--space", "hsv"],
        &["convert", "--to", "cmyk", "#FF0000"],
        &["list", "--format", "svg"],
        &["register", "x", r#"{"type":"qualitative","h9":1}"#],
        &["nonsense"],
    ] {
        let out = hcl(args);
        assert_eq!(out.code, EXIT_VALIDATION, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let out = hcl(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("generate"));
}

#[test]
fn list_filters_by_type() {
    let qual = ok_lines(&["list", "qualitative"]);
    let names: Vec<&str> = qual.iter().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(
        names,
        ["Pastel 1", "Dark 2", "Dark 3", "Set 2", "Set 3", "Warm", "Cold", "Harmonic", "Dynamic"]
    );
    let seq = ok_lines(&["list", "sequential"]);
    assert!(seq.iter().all(|l| l.contains("\tsequential-")));
    let out = hcl(&["list", "--format", "json"]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&out.stdout).unwrap();
    assert!(v.len() > 100 && v[0]["name"] == "Pastel 1" && v[0]["type"] == "qualitative");
}

#[test]
fn registry_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    let reg = path.to_str().unwrap();
    let out = hcl(&["--registry", reg, "register", "myset", r#"{"type":"qualitative","h1":0,"c1":60,"l1":80}"#]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved, serde_json::json!([{"name": "myset", "type": "qualitative", "h1": 0.0, "c1": 60.0, "l1": 80.0}]));
    assert_eq!(
        ok_lines(&["--registry", reg, "generate", "qualitative", "--palette", "myset", "-n", "4"]),
        ["#FFACBF", "#C6CD70", "#32DDCD", "#C7BEFF"].map(String::from)
    );
    assert!(ok_lines(&["--registry", reg, "list", "qualitative"]).iter().any(|l| l.starts_with("myset\t")));
    // Without the file the registration is gone.
    assert_eq!(hcl(&["generate", "qualitative", "--palette", "myset", "-n", "4"]).code, EXIT_VALIDATION);
}

#[test]
fn registry_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = hcl(&["--registry", bad.to_str().unwrap(), "list"]);
    assert_eq!(out.code, EXIT_VALIDATION, "{}", out.stderr);
    // A directory cannot be read as a file.
    let out = hcl(&["--registry", dir.path().to_str().unwrap(), "list"]);
    assert_eq!(out.code, EXIT_IO, "{}", out.stderr);
    // A missing file is an empty registry.
    let missing = dir.path().join("missing.json");
    assert_eq!(hcl(&["--registry", missing.to_str().unwrap(), "list"]).code, EXIT_OK);
}

#[test]
fn cvd_colors_and_stdin() {
    assert_eq!(ok_lines(&["cvd", "protan", "0", "#123456", "#ABCDEF80"]), ["#123456", "#ABCDEF80"]);
    let piped = hcl_stdin(&["cvd", "deutan", "1"], r##"["#FF0000FF", "#0000FFFF"]"##);
    assert_eq!(piped.stdout, "#5D4700FF\n#000CF7FF\n");
    let piped = hcl_stdin(&["cvd", "deutan", "1"], "#FF0000FF\n#0000FFFF\n");
    assert_eq!(piped.stdout, "#5D4700FF\n#000CF7FF\n");
}

fn write_png(path: &std::path::Path) -> image::RgbaImage {
    let img = image::RgbaImage::from_fn(13, 7, |x, y| {
        image::Rgba([(x * 19) as u8, (y * 37) as u8, ((x + y) * 11) as u8, 200 + x as u8])
    });
    img.save(path).unwrap();
    img
}

#[test]
fn cvd_png_severity_zero_is_pixel_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("photo.png");
    let img = write_png(&input);
    let out = hcl(&["cvd", "tritan", "0", input.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let written = dir.path().join("photo-tritan.png");
    assert_eq!(out.stdout.trim(), written.to_str().unwrap());
    assert_eq!(image::open(&written).unwrap().to_rgba8(), img);
}

#[test]
fn cvd_png_matches_color_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.png");
    let img = write_png(&input);
    let output = dir.path().join("out.png");
    let out = hcl(&["cvd", "deutan", "0.7", input.to_str().unwrap(), "-o", output.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let got = image::open(&output).unwrap().to_rgba8();
    let px = img.get_pixel(5, 3).0;
    let hex = format!("#{:02X}{:02X}{:02X}{:02X}", px[0], px[1], px[2], px[3]);
    let want = ok_lines(&["cvd", "deutan", "0.7", &hex]);
    let q = got.get_pixel(5, 3).0;
    assert_eq!(format!("#{:02X}{:02X}{:02X}{:02X}", q[0], q[1], q[2], q[3]), want[0]);
}

#[test]
fn cvd_png_io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.png");
    assert_eq!(hcl(&["cvd", "deutan", "1", missing.to_str().unwrap()]).code, EXIT_IO);
    let garbage = dir.path().join("garbage.png");
    std::fs::write(&garbage, b"not a png").unwrap();
    assert_eq!(hcl(&["cvd", "deutan", "1", garbage.to_str().unwrap()]).code, EXIT_VALIDATION);
}

#[test]
fn manip_commands() {
    assert_eq!(ok_lines(&["manip", "lighten", "0.2", "#61A9D9"]), ["#76BBEB"]);
    assert_eq!(ok_lines(&["manip", "darken", "0", "#61A9D9"]), ["#61A9D9"]);
    let abs = ok_lines(&["manip", "darken", "0.2", "#61A9D9", "--space", "hcl", "--adjust", "absolute"]);
    assert_eq!(abs.len(), 1);
    assert_ne!(abs[0], "#61A9D9");
    let out = hcl(&["manip", "desaturate", "1", "#FFA500", "--format", "json"]);
    assert_eq!(out.stdout.trim(), r##"["#B8B8B8"]"##);
}

#[test]
fn convert_and_max_chroma() {
    assert_eq!(ok_lines(&["convert", "--from", "polarLUV", "--to", "sRGB", "70,50,0"]), ["0.893156\t0.585374\t0.646546"]);
    assert_eq!(
        ok_lines(&["convert", "--from", "hcl", "--to", "hex", "70,50,0", "70,50,120", "70,50,240"]),
        ["#E495A5", "#86B875", "#7DB0DD"]
    );
    let hsv = ok_lines(&["convert", "--to", "HSV", "#FF0000"]);
    assert_eq!(hsv, ["0.000000\t1.000000\t1.000000"]);
    assert_eq!(ok_lines(&["max-chroma", "--hue", "0,120", "--lum", "50"]), ["137.96", "69.06"]);
}

#[test]
fn spec_and_swatch_svg() {
    let out = hcl(&["spec", "#E16A86", "#909800", "#00AD9A", "--rgb"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("HCL spectrum") && out.stdout.contains("RGB spectrum"));
    let plain = hcl(&["spec", "--format", "plain", "#000000", "#FFFFFF"]);
    assert_eq!(plain.stdout.lines().count(), 3);
    let piped = hcl_stdin(&["spec", "--format", "json"], "#000000 #777777 #FFFFFF");
    let v: serde_json::Value = serde_json::from_str(&piped.stdout).unwrap();
    assert_eq!(v["n"], 3);

    let sw = hcl(&["swatch", "--type", "qualitative", "-n", "5"]);
    assert_eq!(sw.code, EXIT_OK, "{}", sw.stderr);
    assert_eq!(sw.stdout.matches("<rect").count(), 9 * 5);
    assert!(sw.stdout.contains("Qualitative"));
    let sw = hcl(&["swatch", "--palette", "Dark 3", "--palette", "Set 2", "-n", "4", "#000000", "#FFFFFF"]);
    assert_eq!(sw.stdout.matches("<rect").count(), 10);
    assert_eq!(hcl(&["swatch", "--palette", "nope"]).code, EXIT_VALIDATION);
}

#[test]
fn analyze_reports_type() {
    let out = hcl(&["analyze", "--format", "plain", "#E16A86", "#909800", "#00AD9A", "#9183E6"]);
    assert!(out.stdout.starts_with("type\tqualitative"), "{}", out.stdout);
    let seq = ok_lines(&["generate", "sequential", "--palette", "Blues 2", "-n", "7"]).join(" ");
    let out = hcl_stdin(&["analyze"], &seq);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["inferred"]["type"], "sequential");
    assert_eq!(hcl(&["analyze", "#000000", "#FFFFFF"]).code, EXIT_VALIDATION);
}
