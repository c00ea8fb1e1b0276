use std::path::{Path, PathBuf};
use std::process::Command as Process;

use emergelab_cli::args::{Command, EcaArgs};
use emergelab_cli::{parse_args, render_pbm, run, EmptyImage, Env};
use proptest::prelude::*;

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
        .display()
        .to_string()
}

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn invoke_with(args: &[&str], env: &Env) -> Outcome {
    let argv = std::iter::once("emergelab").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, env, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn invoke(args: &[&str]) -> Outcome {
    invoke_with(args, &Env::default())
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Splits a P4 image into (width, height, rows of bits).
fn decode_pbm(bytes: &[u8]) -> (usize, usize, Vec<Vec<bool>>) {
    let mut parts = bytes.splitn(4, |&b| b == b'\n' || b == b' ');
    assert_eq!(parts.next().unwrap(), b"P4");
    let w: usize = std::str::from_utf8(parts.next().unwrap())
        .unwrap()
        .parse()
        .unwrap();
    let h: usize = std::str::from_utf8(parts.next().unwrap())
        .unwrap()
        .parse()
        .unwrap();
    let data = parts.next().unwrap();
    let stride = w.div_ceil(8);
    assert_eq!(data.len(), stride * h);
    let rows = data
        .chunks(stride)
        .map(|row| (0..w).map(|x| row[x / 8] >> (7 - x % 8) & 1 == 1).collect())
        .collect();
    (w, h, rows)
}

#[test]
fn parse_args_examples() {
    let cli = parse_args([
        "emergelab",
        "eca",
        "--rule",
        "30",
        "--steps",
        "100",
        "--out",
        "r30.pbm",
    ])
    .unwrap();
    match cli.command {
        Command::Eca(EcaArgs {
            rule,
            steps,
            ref out,
            ..
        }) => {
            assert_eq!((rule, steps), (30, 100));
            assert_eq!(out.as_deref(), Some(Path::new("r30.pbm")));
        }
        other => panic!("parsed as {other:?}"),
    }
    let cli = parse_args(["emergelab", "ant", "--steps", "20000", "--detect-highway"]).unwrap();
    assert!(matches!(cli.command, Command::Ant(ref a) if a.steps == 20_000 && a.detect_highway));
    assert!(parse_args(["emergelab", "eca", "--rule", "300", "--steps", "5"]).is_err());
}

#[test]
fn pbm_examples() {
    assert_eq!(render_pbm(&[vec![true]]).unwrap(), b"P4\n1 1\n\x80");
    assert_eq!(render_pbm(&[vec![false; 8]]).unwrap(), b"P4\n8 1\n\x00");
    assert_eq!(render_pbm(&[vec![true; 9]]).unwrap(), b"P4\n9 1\n\xff\x80");
    assert_eq!(
        render_pbm(&[]),
        Err(EmptyImage {
            width: 0,
            height: 0
        })
    );
}

#[test]
fn rule_90_image_is_the_sierpinski_gasket() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pbm");
    let r = invoke(&[
        "eca",
        "--rule",
        "90",
        "--steps",
        "64",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (w, h, rows) = decode_pbm(&std::fs::read(&out).unwrap());
    assert_eq!((w, h), (129, 65));
    for (n, row) in rows.iter().enumerate() {
        for (x, &black) in row.iter().enumerate() {
            let k = x as i64 - 64 + n as i64;
            let want = k >= 0 && k % 2 == 0 && (k / 2) as usize & !n == 0 && (k / 2) as usize <= n;
            assert_eq!(black, want, "row {n}, column {x}");
        }
    }
}

#[test]
fn eca_text_export() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("r.txt");
    let r = invoke(&[
        "eca",
        "--rule",
        "254",
        "--steps",
        "2",
        "--text",
        path_str(&text),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        std::fs::read_to_string(&text).unwrap(),
        "..#..\n.###.\n#####\n"
    );
}

#[test]
fn background_flipping_rule_needs_cyclic_mode() {
    let r = invoke(&["eca", "--rule", "1", "--steps", "3"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: eca --rule 1:"), "{}", r.stderr);
    assert_eq!(r.stderr.lines().count(), 1);
    let r = invoke(&["eca", "--rule", "1", "--steps", "3", "--cyclic"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(field(&r.stdout, "width"), "7");
}

#[test]
fn glider_bounding_box_moves_diagonally() {
    let glider = fixture("glider.rle");
    let before = invoke(&[
        "life", "run", "--rle", &glider, "--steps", "0", "--print", "bbox",
    ]);
    let after = invoke(&[
        "life", "run", "--rle", &glider, "--steps", "4", "--print", "bbox",
    ]);
    assert_eq!(after.code, 0, "{}", after.stderr);
    for key in ["min_x", "min_y", "max_x", "max_y"] {
        let a: i64 = field(&before.stdout, key).parse().unwrap();
        let b: i64 = field(&after.stdout, key).parse().unwrap();
        assert_eq!(b, a + 1, "{key}");
    }
}

#[test]
fn life_outputs() {
    let r = invoke(&[
        "life",
        "run",
        "--cells",
        &fixture("glider.cells"),
        "--steps",
        "0",
        "--print",
        "rle",
    ]);
    assert_eq!(
        r.stdout,
        std::fs::read_to_string(fixture("glider.rle")).unwrap()
    );
    let r = invoke(&["life", "fate", "--rle", &fixture("blinker.rle")]);
    assert_eq!(field(&r.stdout, "kind"), "oscillator");
    assert_eq!(field(&r.stdout, "period"), "2");
    let r = invoke(&[
        "life",
        "run",
        "--rle",
        &fixture("diehard.rle"),
        "--steps",
        "200",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("life run"), "{}", r.stderr);
}

#[test]
fn ant_reports_the_highway() {
    let r = invoke(&["ant", "--steps", "20000", "--detect-highway"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().any(|l| l == "period=104"));
    assert_eq!(
        r.stdout,
        std::fs::read_to_string(fixture("golden/ant_highway.txt")).unwrap()
    );
}

#[test]
fn ant_image_and_marker() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ant.pbm");
    let r = invoke(&["ant", "--steps", "1", "--out", path_str(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // One step: the start cell turns black and the ant moves left of it.
    assert_eq!(std::fs::read(&out).unwrap(), b"P4\n2 1\n\x40");
    let marker = std::fs::read_to_string(dir.path().join("ant.pbm.ant")).unwrap();
    assert!(marker.starts_with("# "));
    assert_eq!(field(&marker, "column"), "0");
    assert_eq!(field(&marker, "row"), "0");
    assert_eq!(field(&marker, "heading"), "W");
}

#[test]
fn tm_run_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("trace.txt");
    let machine = fixture("tm/succ_enum.tm");
    let r = invoke(&[
        "tm",
        "run",
        "--machine",
        &machine,
        "--n",
        "3",
        "--export",
        path_str(&export),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        std::fs::read_to_string(&export).unwrap(),
        "1 1 11\n2 2 23\n3 3 35\n"
    );
    assert_eq!(field(&r.stdout, "halted"), "true");
    assert_eq!(field(&r.stdout, "value_3"), "3");
}

#[test]
fn budget_comes_from_flag_then_environment() {
    let machine = fixture("tm/succ_enum.tm");
    let args = ["tm", "run", "--machine", machine.as_str(), "--n", "3"];
    let tight = Env {
        budget: Some("1".into()),
    };
    let r = invoke_with(&args, &tight);
    assert_eq!(r.code, 1);
    assert!(
        r.stderr.starts_with("error: tm run succ_enum.tm n=3:"),
        "{}",
        r.stderr
    );
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "1000"]);
    assert_eq!(invoke_with(&with_flag, &tight).code, 0);
    let bad = Env {
        budget: Some("lots".into()),
    };
    assert_eq!(invoke_with(&args, &bad).code, 2);
}

#[test]
fn tm_compose_timing_and_audit() {
    let succ = fixture("tm/succ_enum.tm");
    let r = invoke(&[
        "tm",
        "compose",
        "--approx",
        &succ,
        "--finisher",
        &fixture("tm/copy_last_block.tm"),
        "--n",
        "3",
    ]);
    assert_eq!(field(&r.stdout, "value"), "3");

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.txt");
    let r = invoke(&[
        "tm",
        "timing",
        "--machine",
        &succ,
        "--to",
        "20",
        "--out",
        path_str(&table),
    ]);
    assert_eq!(field(&r.stdout, "T_1"), "12");
    assert_eq!(std::fs::read_to_string(&table).unwrap().lines().count(), 20);

    let audit = |finisher: &str, timing: &[&str]| {
        let fin = fixture(finisher);
        let mut args = vec![
            "tm",
            "audit",
            "--approx",
            &succ,
            "--finisher",
            &fin,
            "--to",
            "20",
            "--c",
            "8",
        ];
        args.extend(["--reference", "identity"]);
        args.extend(timing);
        invoke(&args)
    };
    let good = audit("tm/copy_last_block.tm", &["--timing", path_str(&table)]);
    assert_eq!(good.code, 0, "{}", good.stderr);
    assert_eq!(field(&good.stdout, "pass"), "true");
    let bad = audit("tm/recompute.tm", &["--timing-machine", &succ]);
    assert_eq!(field(&bad.stdout, "pass"), "false");
    let neither = audit("tm/recompute.tm", &[]);
    assert_eq!(neither.code, 2);
}

#[test]
fn candidate_commands() {
    let r = invoke(&["candidate", "chain", "--sqrt", "2", "--n", "2"]);
    assert_eq!(
        (field(&r.stdout, "f_1"), field(&r.stdout, "f_2")),
        ("4", "1421")
    );
    let r = invoke(&[
        "candidate",
        "chain",
        "--digits-file",
        &fixture("candidates/degenerate.digits"),
        "--n",
        "2",
    ]);
    assert_eq!(r.code, 1);
    let r = invoke(&["candidate", "sqrt", "--m", "3", "--digits", "5"]);
    assert_eq!(field(&r.stdout, "decimals"), "73205");
    let r = invoke(&["candidate", "words", "--i", "4"]);
    assert_eq!(field(&r.stdout, "word"), "00");
    let r = invoke(&[
        "candidate",
        "lang",
        "--dfa",
        &fixture("candidates/even_ones.dfa"),
        "--n",
        "4",
    ]);
    assert_eq!(field(&r.stdout, "count"), "2");
    let r = invoke(&["candidate", "life", "--n", "15"]);
    assert_eq!(field(&r.stdout, "survivors"), "5");
}

#[test]
fn analyze_rule_30() {
    let r = invoke(&["analyze", "--rule", "30"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(field(&r.stdout, "length"), "16384");
    assert_eq!(field(&r.stdout, "ones_fraction"), "8277/16384");
    assert_eq!(field(&r.stdout, "no_short_period"), "true");
    let entropy: f64 = field(&r.stdout, "block_entropy").parse().unwrap();
    assert!(entropy >= 7.8);
}

#[test]
fn analyze_bits_file() {
    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("bits.txt");
    std::fs::write(&bits, "0101 0101\n0101").unwrap();
    let r = invoke(&[
        "analyze",
        "--bits",
        path_str(&bits),
        "--k",
        "1",
        "--max-period",
        "2",
    ]);
    assert_eq!(field(&r.stdout, "ones_fraction"), "1/2");
    assert_eq!(field(&r.stdout, "block_entropy"), "1.000000");
    assert_eq!(field(&r.stdout, "no_short_period"), "false");
    std::fs::write(&bits, "01x").unwrap();
    assert_eq!(invoke(&["analyze", "--bits", path_str(&bits)]).code, 1);
}

#[test]
fn json_has_the_same_keys_in_the_same_order() {
    let args = ["candidate", "chain", "--sqrt", "2", "--n", "2"];
    let text = invoke(&args).stdout;
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let json: serde_json::Value = serde_json::from_str(&invoke(&with_json).stdout).unwrap();
    let keys: Vec<&str> = json
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let text_keys: Vec<&str> = text.lines().map(|l| l.split_once('=').unwrap().0).collect();
    assert_eq!(keys, text_keys);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |name: &str| {
        let out = dir.path().join(name);
        let r = invoke(&[
            "eca",
            "--rule",
            "30",
            "--steps",
            "100",
            "--out",
            path_str(&out),
        ]);
        (r.stdout.replace(name, ""), std::fs::read(out).unwrap())
    };
    assert_eq!(run_once("a.pbm"), run_once("b.pbm"));
    let a = invoke(&["ant", "--steps", "5000"]).stdout;
    assert_eq!(a, invoke(&["ant", "--steps", "5000"]).stdout);
}

#[test]
fn missing_files_are_domain_errors() {
    let r = invoke(&["tm", "run", "--machine", "/nonexistent/m.tm", "--n", "1"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stderr.lines().count(), 1);
    assert!(r.stderr.contains("m.tm"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_emergelab");
    let ok = Process::new(bin)
        .args(["candidate", "words", "--i", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "i=3\nskip_epsilon=false\nword=1\n"
    );
    let usage = Process::new(bin).args(["eca", "--bogus"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Process::new(bin)
        .args(["eca", "--rule", "255", "--steps", "1"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let env = Process::new(bin)
        .args([
            "tm",
            "run",
            "--machine",
            &fixture("tm/succ_enum.tm"),
            "--n",
            "2",
        ])
        .env("EMERGELAB_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
}

proptest! {
    #[test]
    fn pbm_size_and_bits(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 17), 1..6)) {
        let bytes = render_pbm(&rows).unwrap();
        let (w, h, decoded) = decode_pbm(&bytes);
        prop_assert_eq!((w, h), (17, rows.len()));
        prop_assert_eq!(decoded, rows);
    }
}
