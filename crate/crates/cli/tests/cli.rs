//! Exit-code and output contract of the command line front end.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fractal-cone"))
}

#[test]
fn pass_fail_and_usage_exit_codes() {
    // passing claim
    let out = bin()
        .args(["verify", "--claim", "homothety", "--epsilon", "1", "--depth", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // failing claim: the default line slope misses only for small ε
    let out = bin()
        .args(["verify", "--claim", "line-avoids-cone", "--epsilon", "1", "--depth", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "FAIL");

    // usage errors
    for args in [
        vec!["verify"],
        vec!["construct", "--set", "nonsense"],
        vec!["verify", "--claim", "slope-band", "--band", "5:7/5"],
        vec!["construct", "--set", "a", "--epsilon", "9"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(3), "args {args:?}");
    }
}

#[test]
fn construct_output_is_deterministic_json() {
    let run = || {
        bin()
            .args(["construct", "--set", "ftilde", "--epsilon", "1", "--depth", "2"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert_eq!(a, run());
    let parsed: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 24);
}

#[test]
fn render_is_deterministic_svg() {
    let run = || {
        bin()
            .args(["render", "--scene", "product-band", "--epsilon", "1", "--depth", "2"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert_eq!(a, run());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn blowup_rescale_and_avoidance() {
    let out = bin()
        .args(["blowup", "--epsilon", "1", "--depth", "1", "--center", "0,0", "--scale", "1/7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let set: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(set.as_array().unwrap().len(), 1);

    let out = bin()
        .args([
            "blowup", "--epsilon", "1", "--depth", "1", "--center", "0,0", "--scale", "1/7",
            "--band", "1/2:5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // center off the set is a usage error
    let out = bin()
        .args(["blowup", "--epsilon", "1", "--depth", "1", "--center", "1/2,0", "--scale", "1/7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
