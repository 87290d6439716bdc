//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use delsarte_core::cyclic::verify_cyclic;
use delsarte_core::linalg::{
    abelian_subquotient, is_divisor_chain, lattice_contains, lattice_intersection, smith_normal_form,
    sparse_subquotient, unimodular_inverse, AbelianGroupStructure, Matrix, SparseMatrix,
};
use delsarte_core::modules::{Filtration, ModuleKind};
use delsarte_core::pi1::pi1;
use delsarte_core::quotient::all_permutations;
use delsarte_core::report::{
    analyze_quotient, matrix_case_text, paper_examples, GoldenReport, QuotientSpec, CYCLIC_STUDY, DIAGONAL_CASES,
    MAX_LENGTH_CASES, PRIME_TO_SIX_CASES,
};
use delsarte_core::FiniteQuotient;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn golden_section(r: &GoldenReport, prefix: &str) -> Outcome {
    let rows: Vec<_> = r.checks.iter().filter(|c| c.case.starts_with(prefix)).collect();
    let bad: Vec<String> = rows
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {}: expected {} got {}", c.case, c.quantity, c.expected, c.got))
        .collect();
    if rows.is_empty() {
        Err(format!("no rows for {prefix}"))
    } else if bad.is_empty() {
        Ok(format!("{} exact checks", rows.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn golden_quotients() -> Vec<FiniteQuotient> {
    let mut out: Vec<FiniteQuotient> = MAX_LENGTH_CASES
        .iter()
        .chain(&PRIME_TO_SIX_CASES)
        .map(|(d, m, _, _)| QuotientSpec::Matrix(matrix_case_text(d, m)).build().unwrap())
        .collect();
    out.extend(DIAGONAL_CASES.iter().map(|(m, _)| FiniteQuotient::diagonal(*m).unwrap()));
    out.push(QuotientSpec::Matrix(CYCLIC_STUDY.into()).build().unwrap());
    out
}

fn criterion_4(golden: &GoldenReport) -> Outcome {
    let base = golden_section(golden, "cyclic")?;
    let q = QuotientSpec::Matrix(CYCLIC_STUDY.into()).build().map_err(|e| e.to_string())?;
    let b = Filtration::new(&q, ModuleKind::AmEmbedded).layer(3).map_err(|e| e.to_string())?;
    let bp = Filtration::new(&q, ModuleKind::Bprime).layer(3).map_err(|e| e.to_string())?;
    if b.torsion_factors != [2, 4] || bp.torsion_factors != [2, 4, 4] {
        return Err(format!("B3/B2 {b}, B'3/B'2 {bp}"));
    }
    Ok(base)
}

fn criterion_5(quotients: &[FiniteQuotient]) -> Outcome {
    for q in quotients {
        let r = analyze_quotient(q, true).map_err(|e| format!("{q}: {e}"))?;
        let t = &r.torsion_t;
        let e = r.group.exponent as u128;
        let ok = r.rank_k.formula == r.rank_k.snf
            && t.length() as u64 <= 6 + r.delta as u64
            && ((e * e * e) / r.group.order as u128) % t.torsion_exponent() as u128 == 0
            && r.bounds.all_permutations.len() == 24
            && r.bounds.all_permutations.iter().all(|b| b.product() % t.torsion_order() == 0);
        if !ok {
            return Err(format!("{q}: rank {:?}, T = {t}", r.rank_k));
        }
    }
    Ok(format!("{} quotients, 24 index orders each", quotients.len()))
}

fn criterion_6() -> Outcome {
    for m in 1..=6u64 {
        let q = FiniteQuotient::fermat(m).map_err(|e| e.to_string())?;
        let r = analyze_quotient(&q, false).map_err(|e| e.to_string())?;
        let delta = (m % 2 == 0) as i64;
        if !r.torsion_t.is_trivial() || r.rank_k.snf != 9 * m as i64 - 3 - delta {
            return Err(format!("m = {m}: T = {}, rank K = {}", r.torsion_t, r.rank_k.snf));
        }
        let f = Filtration::new(&q, ModuleKind::AmEmbedded);
        let m = m as usize;
        let expect = [m - 1 - delta as usize, 2 * (m - 1), 3 * (m - 1), 3 * m];
        for level in 1..=4 {
            let s = f.layer(level).map_err(|e| e.to_string())?;
            if s != AbelianGroupStructure::free(expect[level - 1]) {
                return Err(format!("m = {m}: B{level}/B{} = {s}", level - 1));
            }
        }
    }
    Ok("m = 1..6".into())
}

fn criterion_7() -> Outcome {
    let cases = common::random_cyclic_weights(17, 60, 40);
    for &(m, w) in &cases {
        let q = FiniteQuotient::cyclic(m, w).map_err(|e| e.to_string())?;
        let v = verify_cyclic(&q).map_err(|e| format!("m={m} w={w:?}: {e}"))?;
        if !v.passed {
            return Err(format!("m={m} w={w:?}: {:?}", v.fields));
        }
    }
    let max_m = cases.iter().map(|c| c.0).max().unwrap();
    Ok(format!("{} weight sets, m up to {max_m}, Q and every F_p with p | m", cases.len()))
}

fn criterion_8(quotients: &[FiniteQuotient]) -> Outcome {
    let mut special = 0;
    for q in quotients {
        let p = pi1(q).map_err(|e| format!("{q}: {e}"))?;
        let c = q.classify();
        if p.structure.length() > 1 || c.height % p.order != 0 {
            return Err(format!("{q}: pi_1 = {}", p.structure));
        }
        if c.is_special() {
            special += 1;
            if p.order != 1 {
                return Err(format!("{q}: special but pi_1 = {}", p.structure));
            }
        }
        for perm in all_permutations() {
            if pi1(&q.permuted(perm)).map_err(|e| e.to_string())? != p {
                return Err(format!("{q}: pi_1 changes under {perm:?}"));
            }
        }
    }
    Ok(format!("{} quotients ({special} special), 24 index orders each", quotients.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut shapes = Vec::new();
    for _ in 0..8 {
        let (r, c) = (rng.gen_range(1..=50), rng.gen_range(1..=50));
        let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let a = Matrix::from_i64(r, c, &data);
        let f = smith_normal_form(&a);
        let unimodular = |u: &Matrix<BigInt>| u.determinant().abs().is_one();
        if !unimodular(&f.u) || !unimodular(&f.v) || !is_divisor_chain(&f.diagonal()) {
            return Err(format!("{r}x{c}: transforms not unimodular or diagonal not a chain"));
        }
        if &(&unimodular_inverse(&f.u) * &f.d) * &unimodular_inverse(&f.v) != a {
            return Err(format!("{r}x{c}: U^-1 D V^-1 != A"));
        }
        shapes.push(format!("{r}x{c}"));
    }
    // intersections of sublattices of Z^2 against a window search
    let mut pairs = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in [-3i64, 3] {
                let l1 = Matrix::from_i64(2, 2, &[2, a, 0, c]);
                let l2 = Matrix::from_i64(2, 2, &[b, 3, 2, 0]);
                if l2.determinant().is_zero() {
                    continue;
                }
                let meet = lattice_intersection(&l1, &l2);
                pairs += 1;
                for x in -12i64..=12 {
                    for y in -12i64..=12 {
                        let v = [BigInt::from(x), BigInt::from(y)];
                        let want = lattice_contains(&l1, &v) && lattice_contains(&l2, &v);
                        if lattice_contains(&meet, &v) != want {
                            return Err(format!("intersection of {l1:?} and {l2:?} at ({x},{y})"));
                        }
                    }
                }
            }
        }
    }
    // (Z/4 + Z/6 + Z) / <2 e1, 3 e2> = Z/2 + Z/3 + Z
    let rel = Matrix::from_i64_rows(&[&[4, 0, 0], &[0, 6, 0]]);
    let upper = Matrix::identity(3);
    let lower = Matrix::from_i64_rows(&[&[2, 0, 0], &[0, 3, 0]]);
    let want = AbelianGroupStructure::from_cyclic_orders(1, &[2, 3]);
    let dense = abelian_subquotient(3, &rel, &upper, &lower).map_err(|e| e.to_string())?;
    let sparse = sparse_subquotient(
        &SparseMatrix::from_dense(&rel),
        &SparseMatrix::from_dense(&upper),
        &SparseMatrix::from_dense(&lower),
    )
    .map_err(|e| e.to_string())?;
    if dense != want || sparse != want {
        return Err(format!("direct sum: dense {dense}, sparse {sparse}"));
    }
    Ok(format!("SNF on {}, {pairs} lattice pairs, direct sums", shapes.join(" ")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let golden = paper_examples();
    let mut fixtures = golden_quotients();
    fixtures.extend(common::random_quotients(2024, 120, 200).into_iter().map(|x| x.1));

    let results: Vec<(&str, Outcome)> = vec![
        ("maximal-length golden table", golden_section(&golden, "maximal length")),
        ("order prime to 6 golden table", golden_section(&golden, "prime to 6")),
        ("diagonal quotients", golden_section(&golden, "diagonal")),
        ("cyclic m = 12 study", criterion_4(&golden)),
        ("rank formula and torsion bounds", criterion_5(&fixtures)),
        ("Fermat quotients", criterion_6()),
        ("cyclic closed form", criterion_7()),
        ("fundamental group", criterion_8(&fixtures)),
        ("exact engine", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
