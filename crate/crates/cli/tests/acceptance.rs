//! End-to-end acceptance checks. Each test prints one line so a plain
//! `cargo test --test acceptance -- --nocapture` doubles as a report.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fractal_cone::blowup::{
    blowup_sector_avoidance, check_building_witness, grid_corners, BlowupFrame,
};
use fractal_cone::claims::{
    double_hit_line, double_hit_slopes, verify_line_avoids_cone, verify_no_plane,
    verify_slope_band,
};
use fractal_cone::construction::{build_a, build_e, build_f, verify_homothety};
use fractal_cone::dimension::dimension_report;
use fractal_cone::rect::{product_rectset, Rect};
use fractal_cone::{ConstructionParams, Interval, IntervalSet, Rational, Verdict};

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn params(eps: &str, depth: u32) -> ConstructionParams {
    ConstructionParams::new(rat(eps), depth).unwrap()
}

fn report(n: u32, name: &str, ok: bool) {
    println!(
        "acceptance {n} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion {n} ({name}) failed");
}

#[test]
fn criterion_1_homothety() {
    let start = Instant::now();
    let mut ok = true;
    // levels 1..4 compared pairwise at each ε
    for eps in ["1", "1/8", "3"] {
        let cert = verify_homothety(&params(eps, 5)).unwrap();
        ok &= cert.verdict == Verdict::Pass;
    }
    ok &= start.elapsed().as_secs_f64() < 5.0;
    report(1, "homothety", ok);
}

#[test]
fn criterion_2_line_avoids_cone() {
    let start = Instant::now();
    let pass = verify_line_avoids_cone(&params("1/8", 4), None).unwrap();
    let fail = verify_line_avoids_cone(&params("1", 4), None).unwrap();
    let ok = pass.verdict == Verdict::Pass
        && fail.verdict == Verdict::Fail
        && start.elapsed().as_secs_f64() < 1.0;
    report(2, "line-avoids-cone", ok);
}

#[test]
fn criterion_3_slope_band() {
    let start = Instant::now();
    let band = (rat("7/5"), rat("5"));
    let mut ok = true;
    for depth in 1..=6 {
        let cert = verify_slope_band(&params("1", depth), &band).unwrap();
        ok &= cert.verdict == Verdict::Pass;
    }
    ok &= start.elapsed().as_secs_f64() < 60.0;

    // sharpness at the lower edge: slope 7/5 itself is attained by the
    // diagonal pair, with the line through (1/7, 0) and (6/7, 1)
    let s00 = Rect::from_strs("0", "1/7", "0", "1/7").unwrap();
    let s11 = Rect::from_strs("6/7", "1", "6/7", "1").unwrap();
    let m = rat("7/5");
    let q = rat("-1/5");
    ok &= double_hit_slopes(&s00, &s11).unwrap().contains(&m);
    ok &= s00.hit_by_line(&m, &q) && s11.hit_by_line(&m, &q);
    ok &= &m * &rat("1/7") + &q == rat("0");
    ok &= &m * &rat("6/7") + &q == rat("1");

    // sharpness at the upper edge: slope 5 is attained by the stacked pair
    let s01 = Rect::from_strs("0", "1/7", "6/7", "1").unwrap();
    let m5 = rat("5");
    let hits = double_hit_slopes(&s00, &s01).unwrap();
    ok &= hits.contains(&m5);
    let q5 = double_hit_line(&s00, &s01, &m5).unwrap();
    ok &= s00.hit_by_line(&m5, &q5) && s01.hit_by_line(&m5, &q5);

    report(3, "slope-band", ok);
}

#[test]
fn criterion_4_dimension() {
    let mut ok = true;
    let d2 = dimension_report(2, &params("1", 3)).unwrap();
    ok &= (d2.dimension_value - 2f64.ln() / 7f64.ln()).abs() < 1e-12;
    let d8 = dimension_report(8, &params("1", 3)).unwrap();
    ok &= (d8.dimension_value - 8f64.ln() / 7f64.ln()).abs() < 1e-12;
    for depth in 1..=10 {
        let r = dimension_report(2, &params("1", depth)).unwrap();
        ok &= (r.dimension_value - d2.dimension_value).abs() < 1e-12;
    }
    // 20 parameter samples across (0, 7)
    for k in 1..=20 {
        let eps = Rational::new(k, 3).unwrap();
        for branches in [2, 4, 8] {
            let r = dimension_report(branches, &ConstructionParams::new(eps.clone(), 1).unwrap())
                .unwrap();
            ok &= r.exceeds_threshold && r.dimension_value > r.threshold;
        }
    }
    report(4, "dimension", ok);
}

/// Membership of a scaled-integer interval union at half-step resolution.
fn grid_contains(parts: &[(i64, i64)], x2: i64) -> bool {
    parts.iter().any(|&(lo, hi)| 2 * lo <= x2 && x2 <= 2 * hi)
}

/// Does `parts` meet `parts + x`? Decides difference-set membership.
fn grid_diff_contains(parts: &[(i64, i64)], x2: i64) -> bool {
    parts.iter().any(|&(alo, ahi)| {
        parts
            .iter()
            .any(|&(blo, bhi)| 2 * blo + x2 <= 2 * ahi && 2 * alo <= 2 * bhi + x2)
    })
}

#[test]
fn criterion_5_difference_sets() {
    let mut ok = true;
    // diff(E_i) computed componentwise equals F_i
    for eps in ["1", "1/8"] {
        for depth in 1..=5 {
            let p = params(eps, depth);
            let e = build_e(&p);
            let mut pieces = Vec::new();
            for c1 in e.parts() {
                for c2 in e.parts() {
                    pieces.push(Interval(&c1.0 - &c2.1, &c1.1 - &c2.0));
                }
            }
            ok &= IntervalSet::normalize(pieces) == build_f(&p);
        }
    }

    // product differences factorize: 100 random integer interval unions,
    // checked against the grid oracle
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let gen_parts = |rng: &mut ChaCha8Rng| -> Vec<(i64, i64)> {
            (0..rng.gen_range(1..4))
                .map(|_| {
                    let lo = rng.gen_range(-10i64..10);
                    (lo, lo + rng.gen_range(0i64..5))
                })
                .collect()
        };
        let xp = gen_parts(&mut rng);
        let yp = gen_parts(&mut rng);
        let to_set = |parts: &[(i64, i64)]| {
            IntervalSet::normalize(
                parts
                    .iter()
                    .map(|&(lo, hi)| {
                        Interval(Rational::from_int(lo), Rational::from_int(hi))
                    })
                    .collect(),
            )
        };
        let dx = to_set(&xp).diff_set();
        let dy = to_set(&yp).diff_set();
        for _ in 0..200 {
            let u2 = rng.gen_range(-60i64..=60);
            let v2 = rng.gen_range(-60i64..=60);
            // (u,v) in diff of the product iff both factors hit
            let oracle = grid_diff_contains(&xp, u2) && grid_diff_contains(&yp, v2);
            let got = dx.contains_point(&Rational::new(u2, 2).unwrap())
                && dy.contains_point(&Rational::new(v2, 2).unwrap());
            ok &= got == oracle;
        }
        // sanity on the raw membership helper
        for &(lo, hi) in &xp {
            ok &= grid_contains(&xp, 2 * lo) && grid_contains(&xp, 2 * hi);
        }
    }
    report(5, "difference-sets", ok);
}

#[test]
fn criterion_6_blowup() {
    let mut ok = true;
    // zoom exactness: rescaling the deeper set at 0 reproduces the shallow one
    let base = params("1", 0);
    for i in 0..=8u32 {
        for k in 0..=(8 - i) {
            let beta_k = base.beta().pow(k as i32);
            let window = IntervalSet::singleton(Rational::zero(), beta_k.clone()).unwrap();
            let zoom = build_a(&base.with_depth(i + k))
                .intersection(&window)
                .affine(&beta_k.recip(), &Rational::zero());
            ok &= zoom == build_a(&base.with_depth(i));
        }
    }

    // avoidance at every grid corner of the depth-2 product, two scales
    let p = params("1", 2);
    let a = build_a(&p);
    let set = product_rectset(&a, &a);
    let frames: Vec<BlowupFrame> = grid_corners(&p)
        .into_iter()
        .flat_map(|c| {
            [rat("1/7"), rat("1/49")].into_iter().map(move |s| BlowupFrame {
                center: c.clone(),
                scale: s,
            })
        })
        .collect();
    let cert = blowup_sector_avoidance(&set, &(rat("7/5"), rat("5")), &frames).unwrap();
    ok &= cert.verdict == Verdict::Pass;
    report(6, "blowup", ok);
}

#[test]
fn criterion_7_no_plane() {
    let cert = verify_no_plane(&params("1", 4), &(rat("7/5"), rat("5"))).unwrap();
    let mut ok = cert.verdict == Verdict::Pass;
    // one omitted open sector recorded per coordinate plane
    let witnesses = cert.witness.as_array().cloned().unwrap_or_default();
    ok &= witnesses.len() == 3;
    for w in &witnesses {
        ok &= w["omitted_open_sector"]["from"].is_array()
            && w["omitted_open_sector"]["to"].is_array();
    }
    // the witness chain behind the projections
    let bw = check_building_witness(&params("1", 3)).unwrap();
    ok &= bw.verdict == Verdict::Pass;
    report(7, "no-plane", ok);
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_fractal-cone");
    let run = || {
        let out = Command::new(bin)
            .args(["verify", "--all"])
            .env("FRACTAL_CONE_THREADS", "2")
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let (code1, out1) = run();
    let (code2, out2) = run();
    let mut ok = code1 == Some(0) && code2 == Some(0);
    ok &= !out1.is_empty() && out1 == out2;
    ok &= start.elapsed().as_secs_f64() < 120.0;
    report(8, "determinism", ok);
}
