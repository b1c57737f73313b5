//! One PASS/FAIL line per acceptance criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semitoric::cone::GenCone;
use semitoric::groups::{
    check_hom_groups, extract_groups, functor_f, gamma_oracle, is_seminormal_fan, validate_groups, validate_monoids,
    FanWithGroups, FanWithMonoids,
};
use semitoric::lattice::{Int, IntVec, LatticeHom, Sublattice};
use semitoric::monoid::{
    hilbert_basis, interior_member, is_saturated, is_semisaturated, m_group, make_monoid, monoid_equal, saturation,
    seminormalize, semisaturation_witness, sum_with_group, AffineMonoid, MembershipOracle,
};
use semitoric::sample::{random_fan_with_groups, random_monoid};
use semitoric_cli::{load_path, Document};

type Outcome = Result<String, String>;

fn v(x: &[i64]) -> IntVec {
    IntVec::from_i64(x)
}

fn mon(xs: &[&[i64]]) -> AffineMonoid {
    let gens: Vec<IntVec> = xs.iter().map(|x| v(x)).collect();
    make_monoid(&gens, 2).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn box_points(d: usize, r: i64) -> Vec<IntVec> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (-r..=r).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.into_iter().map(|p| IntVec::from_i64(&p)).collect()
}

/// Monoids computed from an oracle, kept for the certification check.
struct Produced {
    items: Vec<(String, MembershipOracle, AffineMonoid)>,
}

impl Produced {
    fn functor(&mut self, label: &str, x: &FanWithGroups, y: &FanWithMonoids) {
        for i in 0..x.fan().len() {
            let oracle = gamma_oracle(x, i).unwrap();
            self.items.push((
                format!("{label} cone {{{}}}", x.fan().key(i)),
                oracle,
                y.monoid(i).clone(),
            ));
        }
    }

    fn seminormal(&mut self, label: &str, s: &AffineMonoid) -> AffineMonoid {
        let sn = seminormalize(s).unwrap();
        self.items.push((label.to_string(), sn.oracle, sn.monoid.clone()));
        sn.monoid
    }
}

fn load_groups(name: &str) -> FanWithGroups {
    match load_path(&data(name)).unwrap() {
        Document::FanWithGroups(x) => x.data,
        _ => panic!("{name} is not a fan with groups"),
    }
}

fn criterion_1(p: &mut Produced) -> Outcome {
    let s = mon(&[&[0, 1], &[1, 2], &[2, 0]]);
    let plus = p.seminormal("gapped monoid seminormalization", &s);
    let expected = vec![v(&[0, 1]), v(&[1, 1]), v(&[2, 0])];
    ensure(plus.generators() == expected.as_slice(), || {
        format!("generators {:?}", plus.generators())
    })?;
    ensure(!s.contains(&v(&[1, 1])).unwrap(), || "(1,1) is in S".into())?;
    ensure(
        s.contains(&v(&[2, 2])).unwrap() && s.contains(&v(&[3, 3])).unwrap(),
        || "(2,2) or (3,3) missing".into(),
    )?;
    Ok("S+ = <(0,1),(1,1),(2,0)>".into())
}

fn criterion_2(p: &mut Produced) -> Outcome {
    for a in 1..=4 {
        let s = mon(&[&[1, 0], &[0, 1], &[2, -a]]);
        let sat = is_saturated(&s).unwrap();
        let semi = is_semisaturated(&s).unwrap();
        ensure(sat == (a <= 1), || format!("alpha {a}: saturated = {sat}"))?;
        ensure(semi == (a <= 2), || format!("alpha {a}: semisaturated = {semi}"))?;
        p.seminormal(&format!("alpha {a} seminormalization"), &s);
        if a == 3 {
            let w = semisaturation_witness(&s).unwrap();
            ensure(w == Some(v(&[1, -1])), || format!("alpha 3 witness {w:?}"))?;
        }
    }
    Ok("normal iff alpha <= 1, seminormal iff alpha <= 2, witness (1,-1)".into())
}

fn criterion_3(p: &mut Produced) -> Outcome {
    let x = load_groups("three_cones.json");
    let y = functor_f(&x).unwrap();
    p.functor("three-cone fan", &x, &y);
    let s1 = x.fan().find(&[0, 1]).unwrap();
    let expected = vec![v(&[0, -2]), v(&[1, 1]), v(&[1, 2])];
    let got = y.monoid(s1).generators();
    ensure(got == expected.as_slice(), || format!("generators {got:?}"))?;
    Ok("Gamma_sigma1 = <(0,-2),(1,1),(1,2)>".into())
}

fn criterion_4() -> Outcome {
    let x = load_groups("three_cones.json");
    let y = functor_f(&x).unwrap();
    let fan = x.fan();
    let tau = fan.cone(fan.find(&[1]).unwrap());
    let local = |s: &AffineMonoid| sum_with_group(s, &m_group(s, tau).unwrap()).unwrap();
    let a = local(y.monoid(fan.find(&[0, 1]).unwrap()));
    let b = local(y.monoid(fan.find(&[1, 2]).unwrap()));
    ensure(monoid_equal(&a, &b).unwrap(), || "localizations differ".into())?;
    let expected = mon(&[&[0, 2], &[0, -2], &[1, 0], &[1, 1]]);
    for (name, s) in [("sigma1", &a), ("sigma2", &b)] {
        for g in expected.generators() {
            ensure(s.contains(g).unwrap(), || format!("{g} missing from the {name} side"))?;
        }
        for g in s.generators() {
            ensure(expected.contains(g).unwrap(), || {
                format!("{g} of the {name} side is extra")
            })?;
        }
        for m in box_points(2, 4) {
            ensure(s.contains(&m).unwrap() == expected.contains(&m).unwrap(), || {
                format!("{name} side disagrees at {m}")
            })?;
        }
    }
    Ok("both localizations along the common ray equal {0}x2Z + N>0 x Z".into())
}

fn criterion_5() -> Outcome {
    let Document::FanWithMonoids(y) = load_path(&data("two_quadrants.json")).unwrap() else {
        return Err("wrong document kind".into());
    };
    let y = y.data;
    let r = validate_monoids(&y).unwrap();
    ensure(r.failures.len() == 1, || format!("{} failures", r.failures.len()))?;
    let f = &r.failures[0];
    let fan = y.fan();
    let (s1, s2) = (fan.find(&[0, 1]).unwrap(), fan.find(&[0, 2]).unwrap());
    let common = fan.find(&[0]).unwrap();
    ensure(f.condition == 2, || format!("condition {}", f.condition))?;
    ensure(f.tau == common && (f.sigma == s1 || f.sigma == s2), || {
        format!("pair ({}, {})", fan.key(f.tau), fan.key(f.sigma))
    })?;
    let w = f.witness.clone().ok_or("no witness")?;
    ensure(w == v(&[1, 0]), || format!("witness {w}"))?;
    let tau = fan.cone(common);
    let local = |s: &AffineMonoid| sum_with_group(s, &m_group(s, tau).unwrap()).unwrap();
    let in1 = local(y.monoid(s1)).contains(&w).unwrap();
    let in2 = local(y.monoid(s2)).contains(&w).unwrap();
    ensure(in1 != in2, || format!("witness in both or neither: {in1} {in2}"))?;
    Ok("condition 2 fails at the common ray with witness (1,0)".into())
}

fn criterion_6() -> Outcome {
    let x = load_groups("quadrant.json");
    ensure(validate_groups(&x).passed(), || "quadrant datum is invalid".into())?;
    let neg = LatticeHom::from_i64(&[&[-1, 0], &[0, -1]]);
    let c = check_hom_groups(&neg, &x, &x).unwrap();
    ensure(c.cones.len() == 4, || format!("{} cones", c.cones.len()))?;
    ensure(c.cones.iter().all(|(_, t)| t.is_some()), || {
        "a group condition fails".into()
    })?;
    ensure(!c.fan.as_ref().unwrap().ok, || "the fan condition holds".into())?;
    ensure(!c.ok, || "accepted as a morphism".into())?;
    Ok("group conditions hold on all four cones, maximal cone not mapped into a cone".into())
}

fn criterion_7(p: &mut Produced) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let count = 240;
    let mut ranks = [0usize; 2];
    for i in 0..count {
        let d = if rng.gen_bool(0.5) { 2 } else { 3 };
        ranks[d - 2] += 1;
        let x = random_fan_with_groups(&mut rng, d);
        ensure(validate_groups(&x).passed(), || format!("instance {i} is invalid"))?;
        let y = functor_f(&x).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(validate_monoids(&y).unwrap().passed(), || {
            format!("instance {i}: F(X) is invalid")
        })?;
        ensure(is_seminormal_fan(&y).unwrap(), || {
            format!("instance {i}: F(X) is not seminormal")
        })?;
        let back = extract_groups(&y).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(back.groups() == x.groups(), || format!("instance {i}: groups differ"))?;
        p.functor(&format!("instance {i}"), &x, &y);
    }
    Ok(format!(
        "{count} instances ({} rank 2, {} rank 3), 0 failures",
        ranks[0], ranks[1]
    ))
}

fn sample_monoid(rng: &mut ChaCha8Rng) -> AffineMonoid {
    if rng.gen_bool(0.6) {
        random_monoid(rng, 2, 4, 3)
    } else {
        random_monoid(rng, 3, 4, 2)
    }
}

fn combination(rng: &mut ChaCha8Rng, s: &AffineMonoid, min: i64) -> IntVec {
    s.generators().iter().fold(IntVec::zeros(s.ambient_dim()), |acc, g| {
        &acc + &g.scale(&Int::from(rng.gen_range(min..=min + 2)))
    })
}

/// Irreducible nonzero points of a pointed rank-2 cone in `[-r, r]²`.
fn brute_irreducibles(c: &GenCone, r: i64) -> BTreeSet<IntVec> {
    let facets: Vec<Vec<i64>> = c.facets().iter().map(|f| f.to_i64().unwrap()).collect();
    let inside = |x: i64, y: i64| facets.iter().all(|f| f[0] * x + f[1] * y >= 0);
    let points: Vec<(i64, i64)> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| (x, y)))
        .filter(|&(x, y)| (x, y) != (0, 0) && inside(x, y))
        .collect();
    points
        .iter()
        .filter(|&&(x, y)| {
            !points
                .iter()
                .any(|&(a, b)| (a, b) != (x, y) && (x - a, y - b) != (0, 0) && inside(x - a, y - b))
        })
        .map(|&(x, y)| v(&[x, y]))
        .collect()
}

fn criterion_8() -> Outcome {
    const SAMPLES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut counts = [0usize; 5];
    for i in 0..SAMPLES {
        let s = sample_monoid(&mut rng);
        let d = s.ambient_dim();
        let fail = |what: &str| format!("sample {i} ({what}) on {:?}", s.generators());

        let a = combination(&mut rng, &s, 0);
        let x = combination(&mut rng, &s, 1);
        ensure(interior_member(&s, &x).unwrap(), || fail("interior point"))?;
        ensure(interior_member(&s, &(&a + &x)).unwrap(), || fail("S + Int(S)"))?;
        counts[0] += 1;

        let sn = seminormalize(&s).unwrap();
        let semi = is_semisaturated(&s).unwrap();
        let sat = saturation(&s).unwrap();
        let r = if d == 2 { 3 } else { 2 };
        for m in box_points(d, r) {
            let in_s = s.contains(&m).unwrap();
            let in_plus = sn.oracle.contains(&m).unwrap();
            let in_sat = sat.contains(&m).unwrap();
            ensure(!in_s || in_plus, || fail("S in S+"))?;
            ensure(!in_plus || in_sat, || fail("S+ in saturation"))?;
            let two = s.contains(&m.scale(&Int::from(2))).unwrap();
            let three = s.contains(&m.scale(&Int::from(3))).unwrap();
            if two && three {
                ensure(in_plus, || fail("2m, 3m"))?;
                ensure(!semi || in_s, || fail("2m, 3m in a semisaturated monoid"))?;
            }
        }
        counts[1] += 1;
        for g in s.generators() {
            ensure(sn.monoid.contains(g).unwrap(), || fail("generator in S+"))?;
        }
        for g in sn.monoid.generators() {
            ensure(sat.contains(g).unwrap(), || fail("S+ generator in saturation"))?;
        }
        counts[2] += 1;

        ensure(is_semisaturated(&sat).unwrap(), || fail("saturation is semisaturated"))?;
        if is_saturated(&s).unwrap() {
            ensure(semi, || fail("saturated but not semisaturated"))?;
        }
        counts[3] += 1;
    }

    let z2 = Sublattice::full(2);
    while counts[4] < SAMPLES {
        let a = v(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        let b = v(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        let c = GenCone::from_generators(2, &[a.clone(), b.clone()]).unwrap();
        if !c.is_pointed() || c.dim() < 2 {
            continue;
        }
        let hb: BTreeSet<IntVec> = hilbert_basis(&c, &z2).unwrap().into_iter().collect();
        let brute = brute_irreducibles(&c, 10);
        ensure(hb == brute, || {
            format!("Hilbert basis of the cone over {a}, {b}: {hb:?} vs {brute:?}")
        })?;
        counts[4] += 1;
    }
    Ok(format!(
        "{} / {} / {} / {} / {} samples (absorption, 2m-3m, sandwich, saturated, Hilbert bases), 0 failures",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn criterion_9(p: &Produced) -> Outcome {
    let mut checks = 0usize;
    for (label, oracle, s) in &p.items {
        let d = s.ambient_dim();
        let r = if d == 2 { 4 } else { 2 };
        for m in box_points(d, r) {
            let a = oracle.contains(&m).map_err(|e| format!("{label}: {e}"))?;
            let b = s.contains(&m).map_err(|e| format!("{label}: {e}"))?;
            ensure(a == b, || format!("{label}: oracle and generators disagree at {m}"))?;
            checks += 1;
        }
    }
    Ok(format!(
        "{} monoids, {checks} membership comparisons, 0 certification failures",
        p.items.len()
    ))
}

fn run_cli(args: &[&str], stdin: Option<&[u8]>) -> (Option<i32>, Vec<u8>) {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_semitoric"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    let out = child.wait_with_output().unwrap();
    (out.status.code(), out.stdout)
}

/// Name, arguments, stdin, exit code and golden file.
type GoldenCase<'a> = (&'a str, Vec<&'a str>, Option<&'a [u8]>, i32, &'a str);

fn criterion_10() -> Outcome {
    let golden =
        |name: &str| std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap();
    let (s2, s3, three_cones, gapped) = (
        data("s2.json"),
        data("s3.json"),
        data("three_cones.json"),
        data("gapped.json"),
    );
    let plus = run_cli(&["seminormalize", &gapped], None).1;
    let cases: Vec<GoldenCase> = vec![
        (
            "is-seminormal S2",
            vec!["is-seminormal", &s2],
            None,
            0,
            "is_seminormal_s2.json",
        ),
        (
            "is-seminormal S3",
            vec!["is-seminormal", &s3],
            None,
            1,
            "is_seminormal_s3.json",
        ),
        (
            "functor --cone 0,1",
            vec!["functor", &three_cones, "--cone", "0,1"],
            None,
            0,
            "functor_three_cones_sigma1.json",
        ),
        (
            "plot-svg",
            vec!["plot-svg", &gapped, "--window", "4"],
            None,
            0,
            "gapped.svg",
        ),
        (
            "plot-svg seminormal",
            vec!["plot-svg", "-", "--window", "4"],
            Some(&plus),
            0,
            "gapped_seminormal.svg",
        ),
    ];
    for (name, args, stdin, code, file) in &cases {
        let (got, out) = run_cli(args, *stdin);
        ensure(got == Some(*code), || format!("{name}: exit {got:?}"))?;
        ensure(out == golden(file), || format!("{name}: output differs from {file}"))?;
    }
    Ok(format!("{} golden outputs and exit codes match", cases.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut produced = Produced { items: Vec::new() };
    let mut failed = 0;
    let mut report = |n: usize, outcome: std::thread::Result<Outcome>| {
        let line = match outcome {
            Ok(Ok(detail)) => format!("criterion {n:>2}: PASS  {detail}"),
            Ok(Err(why)) => format!("criterion {n:>2}: FAIL  {why}"),
            Err(_) => format!("criterion {n:>2}: FAIL  panicked"),
        };
        if line.contains("FAIL") {
            failed += 1;
        }
        println!("{line}");
    };
    let guarded = |f: &mut dyn FnMut() -> Outcome| catch_unwind(AssertUnwindSafe(f));
    report(1, guarded(&mut || criterion_1(&mut produced)));
    report(2, guarded(&mut || criterion_2(&mut produced)));
    report(3, guarded(&mut || criterion_3(&mut produced)));
    report(4, guarded(&mut criterion_4));
    report(5, guarded(&mut criterion_5));
    report(6, guarded(&mut criterion_6));
    report(7, guarded(&mut || criterion_7(&mut produced)));
    report(8, guarded(&mut criterion_8));
    report(9, guarded(&mut || criterion_9(&produced)));
    report(10, guarded(&mut criterion_10));
    println!(
        "acceptance: {} of 10 criteria passed in {:.1} s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
