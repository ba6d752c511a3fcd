//! Identity and positivity checks: the fiber-sum identity, the level
//! transport identity with its closed forms, coefficient positivity, the
//! single-variable q-series identities, the width-one identity, the
//! positivity-transport property test, and the oracle comparisons.

use rand::Rng;

use crate::hua::{p_series, q_series, HuaError, KacTable, RefinedKacTable};
use crate::partitions::{enumerate_tuples, lambda_fiber, tau_m};
use crate::qfield::{gl_order_single, q_minus_one, IntPolynomial, RationalFunction};
use crate::quiver::{DimVector, Quiver};
use crate::series::{ExponentKey, SeriesContext, TruncatedSeries};

use super::{
    gamma_m_oracle, oracle_log, random_enough_loop_quiver, random_nonneg_poly,
    random_positive_series, rng_from_seed, CheckReport,
};

fn rf(s: &str) -> RationalFunction {
    s.parse().expect("constant rational function text")
}

/// All in-bound dimension vectors, grouped by total weight.
fn dim_vectors(n: usize, bound: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn gen(i: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<DimVector>) {
        if i == current.len() {
            out.push(DimVector::new(current.clone()));
            return;
        }
        for v in 0..=budget {
            current[i] = v;
            gen(i + 1, budget - v, current, out);
        }
        current[i] = 0;
    }
    gen(0, bound, &mut current, &mut out);
    out.sort_by_key(|a| (a.total(), a.clone()));
    out
}

/// A(alpha, q) equals the sum of the refined values over the fiber of
/// alpha, for every alpha inside the bound.
pub fn check_sum_identity(quiver: &Quiver, weight_bound: u32) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!(
        "sum-identity {} W={weight_bound}",
        quiver.render_matrix()
    ));
    let kac = KacTable::compute(quiver, weight_bound)?;
    let refined = RefinedKacTable::compute(quiver, weight_bound, Some(weight_bound))?;
    for alpha in dim_vectors(quiver.vertex_count(), weight_bound) {
        if alpha.is_zero() {
            continue;
        }
        let mut sum = RationalFunction::zero();
        for t in lambda_fiber(alpha.entries()) {
            sum = &sum + &refined.get(&t)?;
        }
        report.case(format!("alpha = {alpha}"), kac.get(&alpha)?, sum);
    }
    Ok(report)
}

/// The four closed forms of the level-2 transport for the one-vertex quiver
/// with g loops, as exact rational functions in q.
fn g_loop_closed_forms(g: i64) -> Vec<(&'static str, RationalFunction)> {
    let qp = RationalFunction::q_power;
    let a2 = qp(2 * g - 1);
    let a21 = (&qp(3 * g - 1) * &(&qp(2 * g - 2) - &rf("1")))
        .div(&rf("q-1"))
        .expect("nonzero denominator");
    let a22 = (&qp(4 * g - 1) * &(&qp(4 * g - 4) - &rf("1")))
        .div(&rf("q^2-1"))
        .expect("nonzero denominator");
    let double_mid = &qp(2 * g - 1) * &rf("2");
    let numerator = &(&(&qp(6 * g - 5) - &double_mid) - &qp(2 * g - 2)) + &rf("q+1");
    let a211 = (&qp(4 * g - 1) * &numerator)
        .div(&rf("(q^2-1)*(q-1)"))
        .expect("nonzero denominator");
    vec![
        ("[2]", a2),
        ("[2,1]", a21),
        ("[2,2]", a22),
        ("[2,1,1]", a211),
    ]
}

/// Transport across the enlarged quiver: every refined value with parts
/// <= m equals the level-one refined value of the enlarged quiver at the
/// embedded tuple; the refined series agree coefficientwise under the key
/// identification; and for one-vertex quivers at m = 2 the four closed
/// forms hold.
pub fn check_level_transport(
    quiver: &Quiver,
    m: u32,
    weight_bound: u32,
) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!(
        "transport {} m={m} W={weight_bound}",
        quiver.render_matrix()
    ));
    let enlarged = quiver.gamma_m(m)?;
    let n = quiver.vertex_count();

    let refined = RefinedKacTable::compute(quiver, weight_bound, Some(m))?;
    let refined_enlarged = RefinedKacTable::compute(&enlarged, weight_bound, Some(1))?;
    for t in enumerate_tuples(n, weight_bound, Some(m)) {
        if t.is_zero() {
            continue;
        }
        let image = tau_m(&t, m)?;
        report.case(
            format!("lambda = {t} -> {image}"),
            refined.get(&t)?,
            refined_enlarged.get(&image)?,
        );
    }

    // The refined series of the base quiver embeds coefficientwise into the
    // level-one series of the enlarged quiver: keys coincide as flat
    // multiplicity data.
    let base_series = q_series(quiver, weight_bound, Some(m))?;
    let enlarged_series = q_series(&enlarged, weight_bound, Some(1))?;
    for (key, coeff) in base_series.terms() {
        let image_key = ExponentKey::new(key.entries().to_vec());
        report.case(
            format!("series key {key:?}"),
            coeff,
            enlarged_series.coefficient(&image_key),
        );
    }

    if n == 1 && m == 2 {
        let g = quiver.arrows(0, 0) as i64;
        for (text, expect) in g_loop_closed_forms(g) {
            let t: crate::partitions::PartitionTuple = text.parse().expect("constant tuple text");
            if t.total_weight() <= weight_bound {
                report.case(
                    format!("closed form g={g} lambda={text}"),
                    expect,
                    refined.get(&t)?,
                );
            }
        }
    }
    Ok(report)
}

/// For quivers with enough loops every refined value must be a polynomial
/// with non-negative integer coefficients; otherwise the shape is only
/// recorded.
pub fn check_positivity(quiver: &Quiver, weight_bound: u32) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!(
        "positivity {} W={weight_bound}",
        quiver.render_matrix()
    ));
    let refined = RefinedKacTable::compute(quiver, weight_bound, Some(weight_bound))?;
    let enough = quiver.has_enough_loops();
    for (t, value) in refined.dense_entries() {
        if enough {
            report.case_bool(
                format!("lambda = {t}"),
                "non-negative integer polynomial",
                &value,
                value.is_nonneg_int_poly(),
            );
        } else {
            report.case_bool(format!("lambda = {t} (no loops)"), "recorded", &value, true);
        }
    }
    Ok(report)
}

/// The one-loop quiver: q at the single-part partitions, zero elsewhere.
pub fn check_jordan(weight_bound: u32) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!("jordan W={weight_bound}"));
    let refined = RefinedKacTable::compute(&Quiver::g_loop(1), weight_bound, None)?;
    for (t, value) in refined.dense_entries() {
        let expect = if t.components()[0].parts().len() == 1 {
            rf("q")
        } else {
            RationalFunction::zero()
        };
        report.case(format!("lambda = {t}"), expect, value);
    }
    Ok(report)
}

/// Both single-variable product identities behind the width-one positivity
/// argument, coefficientwise to the bound: the q-factorial sum against
/// Exp(X/(1-q)), and the GL-order sum against Exp(qX/(q-1)).
pub fn check_heine(weight_bound: u32) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!("heine W={weight_bound}"));
    let ctx = SeriesContext::dims(1, weight_bound);
    let x = |coeff: RationalFunction| {
        TruncatedSeries::monomial(ctx.clone(), ExponentKey::new(vec![1]), coeff)
            .expect("key fits context")
    };

    let rhs1 = x(rf("-1/(q-1)")).plethystic_exp()?;
    let mut pochhammer = IntPolynomial::one();
    for m in 0..=weight_bound {
        if m > 0 {
            // (1-q)(1-q^2)...(1-q^m), extended one factor at a time.
            let factor = &IntPolynomial::one() - &IntPolynomial::q_power(m as usize);
            pochhammer = &pochhammer * &factor;
        }
        let expect = RationalFunction::new(IntPolynomial::one(), pochhammer.clone())?;
        report.case(
            format!("factorial form, coefficient of X^{m}"),
            expect,
            rhs1.coefficient(&ExponentKey::new(vec![m])),
        );
    }

    let rhs2 = x(rf("q/(q-1)")).plethystic_exp()?;
    for m in 0..=weight_bound {
        let expect = RationalFunction::new(
            IntPolynomial::q_power((m as usize) * (m as usize)),
            gl_order_single(m),
        )?;
        report.case(
            format!("GL form, coefficient of X^{m}"),
            expect,
            rhs2.coefficient(&ExponentKey::new(vec![m])),
        );
    }
    Ok(report)
}

/// The width-one identity: the sum of |R(alpha)|/|GL(alpha)| monomials
/// equals Exp of (q-1)^-1 times the all-parts-one refined values, for an
/// arbitrary quiver.
pub fn check_width_one(quiver: &Quiver, weight_bound: u32) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!(
        "width1 {} W={weight_bound}",
        quiver.render_matrix()
    ));
    let n = quiver.vertex_count();
    let ctx = SeriesContext::dims(n, weight_bound);

    let mut lhs = TruncatedSeries::zero(ctx.clone());
    for alpha in dim_vectors(n, weight_bound) {
        let e = quiver.rep_space_exponent(&alpha)?;
        let coeff = RationalFunction::new(
            IntPolynomial::q_power(e as usize),
            crate::qfield::gl_order(alpha.entries()),
        )?;
        lhs = lhs.add(&TruncatedSeries::monomial(
            ctx.clone(),
            ExponentKey::new(alpha.entries().to_vec()),
            coeff,
        )?)?;
    }

    let refined = RefinedKacTable::compute(quiver, weight_bound, Some(1))?;
    let mut inner = TruncatedSeries::zero(ctx.clone());
    for (t, value) in refined.dense_entries() {
        // Parts are all 1, so the multiplicity data is the weight vector.
        inner = inner.add(&TruncatedSeries::monomial(
            ctx.clone(),
            ExponentKey::new(t.weight_vector()),
            value,
        )?)?;
    }
    let rhs = inner.scale(&rf("1/(q-1)")).plethystic_exp()?;

    for alpha in dim_vectors(n, weight_bound) {
        let key = ExponentKey::new(alpha.entries().to_vec());
        report.case(
            format!("coefficient of X^{alpha}"),
            lhs.coefficient(&key),
            rhs.coefficient(&key),
        );
    }
    Ok(report)
}

/// Statement-level positivity transport: twisting the coefficients of an
/// Exp-positive series by q^(alpha C alpha^t) with C non-negative keeps the
/// recovered generator polynomials non-negative. Trial 0 uses C = 0 and
/// must recover the inputs exactly.
pub fn check_mozgovoy_transport(
    trials: u32,
    weight_bound: u32,
    seed: u64,
) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!("mozgovoy trials={trials} W={weight_bound}"));
    let mut rng = rng_from_seed(seed);
    for trial in 0..trials {
        let n = rng.gen_range(1..=2usize);
        let ctx = SeriesContext::dims(n, weight_bound);
        let keys: Vec<DimVector> = dim_vectors(n, weight_bound)
            .into_iter()
            .filter(|a| !a.is_zero())
            .collect();

        let mut generator = TruncatedSeries::zero(ctx.clone());
        let mut inputs = Vec::new();
        for alpha in &keys {
            let v = random_nonneg_poly(&mut rng, 3, 3);
            inputs.push((alpha.clone(), v.clone()));
            generator = generator.add(&TruncatedSeries::monomial(
                ctx.clone(),
                ExponentKey::new(alpha.entries().to_vec()),
                RationalFunction::from_poly(v),
            )?)?;
        }
        let twist: Vec<Vec<u32>> = if trial == 0 {
            vec![vec![0; n]; n]
        } else {
            (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..=2u32)).collect())
                .collect()
        };

        let u = generator.scale(&rf("1/(q-1)")).plethystic_exp()?;
        let twisted = TruncatedSeries::from_terms(
            ctx.clone(),
            u.terms().map(|(key, coeff)| {
                let mut e: i64 = 0;
                for (i, &a) in key.entries().iter().enumerate() {
                    for (j, &b) in key.entries().iter().enumerate() {
                        e += twist[i][j] as i64 * a as i64 * b as i64;
                    }
                }
                (key.clone(), coeff * &RationalFunction::q_power(e))
            }),
        )?;
        let recovered = twisted.plethystic_log()?.scale(&q_minus_one());

        for (alpha, v) in &inputs {
            let key = ExponentKey::new(alpha.entries().to_vec());
            let value = recovered.coefficient(&key);
            if trial == 0 {
                report.case(
                    format!("trial 0 (identity twist) alpha = {alpha}"),
                    RationalFunction::from_poly(v.clone()),
                    &value,
                );
            } else {
                report.case_bool(
                    format!("trial {trial} n={n} alpha = {alpha}"),
                    "non-negative integer polynomial",
                    &value,
                    value.is_nonneg_int_poly(),
                );
            }
        }
    }
    Ok(report)
}

/// The grade-by-grade solver against the Moebius-inversion logarithm, on
/// every series family the acceptance pipeline uses plus random series.
pub fn check_oracle_log(randoms: u32, seed: u64) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!("oracle-log randoms={randoms}"));
    let mut named: Vec<(String, TruncatedSeries)> = Vec::new();

    let two_loop = Quiver::g_loop(2);
    named.push((
        "dimension series, 2-loop W=4".into(),
        p_series(&two_loop, 4)?,
    ));
    named.push((
        "refined series, 2-loop W=4".into(),
        q_series(&two_loop, 4, None)?,
    ));
    let with_loops = Quiver::parse("[[1,1],[0,1]]").expect("constant matrix");
    let no_loops = Quiver::parse("[[0,1],[0,0]]").expect("constant matrix");
    for (label, quiver) in [("loops+arrow", &with_loops), ("arrow", &no_loops)] {
        named.push((
            format!("dimension series, {label} W=4"),
            p_series(quiver, 4)?,
        ));
        named.push((
            format!("refined series, {label} W=4 parts<=2"),
            q_series(quiver, 4, Some(2))?,
        ));
        named.push((
            format!("refined series, {label} W=4"),
            q_series(quiver, 4, None)?,
        ));
    }
    named.push((
        "dimension series, 3-loop W=3".into(),
        p_series(&Quiver::g_loop(3), 3)?,
    ));
    named.push((
        "refined series, 3-loop W=3".into(),
        q_series(&Quiver::g_loop(3), 3, None)?,
    ));
    named.push((
        "refined series, 1-loop W=6".into(),
        q_series(&Quiver::g_loop(1), 6, None)?,
    ));
    for g in 1..=3u32 {
        let quiver = Quiver::g_loop(g);
        named.push((
            format!("refined series, {g}-loop W=4 parts<=2"),
            q_series(&quiver, 4, Some(2))?,
        ));
        named.push((
            format!("level-one series of the enlarged {g}-loop W=4"),
            q_series(&quiver.gamma_m(2)?, 4, Some(1))?,
        ));
    }
    let heine_ctx = SeriesContext::dims(1, 8);
    for (label, coeff) in [("factorial", "-1/(q-1)"), ("GL", "q/(q-1)")] {
        let series =
            TruncatedSeries::monomial(heine_ctx.clone(), ExponentKey::new(vec![1]), rf(coeff))?
                .plethystic_exp()?;
        named.push((format!("single-variable {label} form W=8"), series));
    }

    let mut rng = rng_from_seed(seed);
    for i in 0..randoms {
        let n = rng.gen_range(1..=3usize);
        let bound = rng.gen_range(2..=5u32);
        let s = random_positive_series(&mut rng, n, bound, 5);
        let f = TruncatedSeries::one(s.context().clone()).add(&s)?;
        named.push((format!("random series #{i} n={n} W={bound}"), f));
    }

    for (label, f) in named {
        let via_moebius = f.plethystic_log()?;
        let via_oracle = oracle_log(&f)?;
        report.case_bool(
            label,
            "log routes agree",
            if via_moebius == via_oracle {
                "agree"
            } else {
                "disagree"
            },
            via_moebius == via_oracle,
        );
    }
    Ok(report)
}

/// The closed-form enlarged companion matrix against the quadratic-form
/// expansion, on random quivers with enough loops.
pub fn check_gamma_oracle(trials: u32, seed: u64) -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new(format!("gamma-oracle trials={trials}"));
    let mut rng = rng_from_seed(seed);
    for trial in 0..trials {
        let quiver = random_enough_loop_quiver(&mut rng, 3, 3);
        let m = rng.gen_range(1..=3u32);
        let closed = quiver.gamma_m(m)?;
        let expanded = gamma_m_oracle(&quiver, m)?;
        let expanded_quiver = Quiver::new(expanded).expect("square by construction");
        report.case(
            format!("trial {trial}: {} m={m}", quiver.render_matrix()),
            expanded_quiver.render_matrix(),
            closed.render_matrix(),
        );
        report.case_bool(
            format!("trial {trial}: enlarged quiver keeps enough loops"),
            "true",
            closed.has_enough_loops(),
            closed.has_enough_loops(),
        );
    }
    Ok(report)
}
