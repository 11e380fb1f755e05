//! Seeded property suites over random structures. Each suite returns a
//! [`CheckOutcome`]; the transcript of a run depends only on the seed.

use std::fmt;

use rand::Rng;

use crate::catalogue;
use crate::cohomology::{
    assoc_derivation_space, brute_force_differential, derivation_space, CohomologyEngine,
};
use crate::deformation::{
    equation_defect, equivalent_infinitesimals, gauge_transform, trivialize, FormalAutomorphism,
    TruncatedDeformation, Verdict,
};
use crate::field::Field;
use crate::linalg::{zero_vector, Vector};
use crate::operad::{
    evaluate, Cochain, Flavor, OperadWithMultiplication, TwistMode, TwistedOperad,
};
use crate::random::{self, SeededRng};
use crate::structures::{
    from_o_operator, from_rota_baxter, induced_assoc, HomAssocAlgebra, HomDendAlgebra,
    HomRepresentation, LinearEndo, Tensor3,
};

/// Result of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub cases: usize,
    pub failed: usize,
    /// Messages of the first few failing cases.
    pub examples: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} ({} cases, {} failed)",
            self.suite.name(),
            self.cases,
            self.failed
        )?;
        for e in &self.examples {
            write!(f, "\n  - {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    DeltaSquared,
    MultiplicationAxioms,
    ChainMap,
    OperadLaws,
    ObstructionCocycle,
    FirstCohomology,
    SecondCohomology,
    Trivialization,
    Constructors,
    TwoRouteDifferential,
    Duality,
    UntwistedRegression,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::DeltaSquared,
        Suite::MultiplicationAxioms,
        Suite::ChainMap,
        Suite::OperadLaws,
        Suite::ObstructionCocycle,
        Suite::FirstCohomology,
        Suite::SecondCohomology,
        Suite::Trivialization,
        Suite::Constructors,
        Suite::TwoRouteDifferential,
        Suite::Duality,
        Suite::UntwistedRegression,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DeltaSquared => "delta-squared",
            Suite::MultiplicationAxioms => "multiplication-axioms",
            Suite::ChainMap => "chain-map",
            Suite::OperadLaws => "operad-laws",
            Suite::ObstructionCocycle => "obstruction-cocycle",
            Suite::FirstCohomology => "first-cohomology",
            Suite::SecondCohomology => "second-cohomology",
            Suite::Trivialization => "trivialization",
            Suite::Constructors => "constructors",
            Suite::TwoRouteDifferential => "two-route-differential",
            Suite::Duality => "duality",
            Suite::UntwistedRegression => "untwisted-regression",
        }
    }

    /// Number of random cases in the full run. The constructor suite adds
    /// the catalogued examples on top of this.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::DeltaSquared => 200,
            Suite::MultiplicationAxioms => 50,
            Suite::ChainMap => 100,
            Suite::OperadLaws => 100,
            Suite::ObstructionCocycle => 10,
            Suite::FirstCohomology => 50,
            Suite::SecondCohomology => 50,
            Suite::Trivialization => 25,
            Suite::Constructors => 20,
            Suite::TwoRouteDifferential => 50,
            Suite::Duality => 20,
            Suite::UntwistedRegression => 10,
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64 + 1
    }
}

/// Runs `suite` with its default case count.
pub fn run(suite: Suite, seed: u64) -> CheckOutcome {
    run_with(suite, seed, suite.default_cases())
}

pub fn run_with(suite: Suite, seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = random::seeded(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ suite.salt());
    let mut t = Tally {
        cases: 0,
        failed: 0,
        examples: Vec::new(),
    };
    match suite {
        Suite::DeltaSquared => delta_squared(&mut rng, &mut t, cases),
        Suite::MultiplicationAxioms => multiplication_axioms(&mut rng, &mut t, cases),
        Suite::ChainMap => chain_map(&mut rng, &mut t, cases),
        Suite::OperadLaws => operad_laws(&mut rng, &mut t, cases),
        Suite::ObstructionCocycle => obstruction_cocycle(&mut rng, &mut t, cases),
        Suite::FirstCohomology => first_cohomology(&mut rng, &mut t, cases),
        Suite::SecondCohomology => second_cohomology(&mut rng, &mut t, cases),
        Suite::Trivialization => trivialization(&mut rng, &mut t, cases),
        Suite::Constructors => constructors(&mut rng, &mut t, cases),
        Suite::TwoRouteDifferential => two_route(&mut rng, &mut t, cases),
        Suite::Duality => duality(&mut rng, &mut t, cases),
        Suite::UntwistedRegression => untwisted_regression(&mut rng, &mut t, cases),
    }
    CheckOutcome {
        suite,
        cases: t.cases,
        failed: t.failed,
        examples: t.examples,
    }
}

/// Every suite, in order.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    Suite::ALL.into_iter().map(|s| run(s, seed)).collect()
}

const MAX_EXAMPLES: usize = 3;

struct Tally {
    cases: usize,
    failed: usize,
    examples: Vec<String>,
}

impl Tally {
    fn case(&mut self, label: impl FnOnce() -> String, body: impl FnOnce() -> Result<(), String>) {
        self.cases += 1;
        if let Err(msg) = body() {
            self.failed += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(format!("{}: {msg}", label()));
            }
        }
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rationals => "Q".into(),
        Field::Prime(p) => format!("GF({p})"),
    }
}

fn unit(field: Field, d: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, d);
    v[i] = field.one();
    v
}

fn sub(a: &[crate::Scalar], b: &[crate::Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[crate::Scalar], b: &[crate::Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn structure_for(a: &HomDendAlgebra, flavor: Flavor) -> Result<OperadWithMultiplication, String> {
    match flavor {
        Flavor::Dend => OperadWithMultiplication::dendriform(a),
        Flavor::Ass => OperadWithMultiplication::associative(&induced_assoc(a)),
        Flavor::CoDend => OperadWithMultiplication::codendriform(&a.dual()),
        Flavor::CoAss => OperadWithMultiplication::coassociative(&induced_assoc(a).dual()),
    }
    .map_err(err)
}

fn delta_squared(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let owm = random::structure(rng, flavor, field, 3);
        let engine = CohomologyEngine::new(owm.clone());
        let mut samples: Vec<Cochain> = Vec::new();
        let prep = (|| -> Result<(), String> {
            samples.extend(engine.basis(1).map_err(err)?.cochains());
            samples.extend(engine.basis(2).map_err(err)?.cochains());
            Ok(())
        })();
        t.case(
            || {
                format!(
                    "case {case} ({flavor}, {}, d={})",
                    field_name(field),
                    owm.dim()
                )
            },
            || {
                prep?;
                for x in &samples {
                    let dd = owm
                        .differential(&owm.differential(x).map_err(err)?)
                        .map_err(err)?;
                    ensure(dd.is_zero(), || {
                        format!("delta delta != 0 in degree {}", x.degree())
                    })?;
                }
                Ok(())
            },
        );
    }
}

fn multiplication_axioms(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let d = rng.gen_range(1..=3);
        let a = if case % 2 == 0 {
            random::tensor_pair(rng, field, d)
        } else {
            random::dend_algebra(rng, field, d)
        };
        t.case(
            || format!("case {case} (d={})", a.dim()),
            || {
                let owm = OperadWithMultiplication::dendriform_unchecked(&a, TwistMode::Twisted);
                let pp = owm.pi_circ_pi();
                let d = a.dim();
                let e = |i| unit(field, d, i);
                for x in 0..d {
                    for y in 0..d {
                        for z in 0..d {
                            let sides = a.axiom_sides(x, y, z);
                            for (r, (lhs, rhs)) in sides.iter().enumerate() {
                                let got = evaluate(&pp, r, &[e(x), e(y), e(z)]);
                                ensure(got == sub(lhs, rhs), || {
                                    format!("label {} on ({x},{y},{z})", r + 1)
                                })?;
                            }
                        }
                    }
                }
                ensure(pp.is_zero() == a.validate_axioms().is_valid(), || {
                    "vanishing of pi.pi disagrees with the validator".into()
                })
            },
        );
    }
}

fn chain_map(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = if case % 2 == 0 {
            Flavor::Dend
        } else {
            Flavor::CoDend
        };
        let n = 1 + case % 3;
        let m = rng.gen_range(1..=(4 - n).max(1));
        let i = rng.gen_range(1..=n);
        let owm = random::structure(rng, flavor, field, if n == 3 { 2 } else { 3 });
        let engine = CohomologyEngine::new(owm.clone());
        let drawn = (|| -> Result<(Cochain, Cochain), String> {
            let f = random::equivariant_cochain(rng, engine.basis(n).map_err(err)?);
            let g = random::equivariant_cochain(rng, engine.basis(m).map_err(err)?);
            Ok((f, g))
        })();
        t.case(
            || format!("case {case} ({flavor}, degrees {n},{m}, slot {i})"),
            || {
                let (f, g) = drawn?;
                let summed = owm.summed().map_err(err)?;
                let lhs = owm.differential(&f).map_err(err)?.sum_labels();
                let rhs = summed.differential(&f.sum_labels()).map_err(err)?;
                ensure(lhs == rhs, || {
                    "summation does not commute with delta".into()
                })?;
                let comp = owm.partial_comp(&f, &g, i).map_err(err)?.sum_labels();
                let comp_s = summed
                    .partial_comp(&f.sum_labels(), &g.sum_labels(), i)
                    .map_err(err)?;
                ensure(comp == comp_s, || {
                    "summation does not preserve composition".into()
                })
            },
        );
    }
}

fn pre_lie_sign(n: usize, p: usize) -> bool {
    (n - 1) * (p - 1) % 2 == 1
}

fn operad_laws(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let owm = random::structure(rng, flavor, field, 2);
        let engine = CohomologyEngine::new(owm.clone());
        let arities = [
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        ];
        let drawn = (|| -> Result<Vec<Cochain>, String> {
            arities
                .iter()
                .map(|&k| {
                    Ok(random::equivariant_cochain(
                        rng,
                        engine.basis(k).map_err(err)?,
                    ))
                })
                .collect()
        })();
        t.case(
            || format!("case {case} ({flavor}, arities {arities:?})"),
            || {
                let cs = drawn?;
                let (f, g, h) = (&cs[0], &cs[1], &cs[2]);
                let [m, n, p] = arities;
                let op = owm.operad();
                let pc = |x: &Cochain, y: &Cochain, i| op.partial_comp(x, y, i).map_err(err);
                let id = op.identity();
                ensure(pc(&id, f, 1)? == *f, || "left unit".into())?;
                for i in 1..=m {
                    ensure(pc(f, &id, i)? == *f, || format!("right unit at {i}"))?;
                }
                for i in 1..=m {
                    for j in 1..=n {
                        let lhs = pc(&pc(f, g, i)?, h, i + j - 1)?;
                        let rhs = pc(f, &pc(g, h, j)?, i)?;
                        ensure(lhs == rhs, || format!("sequential law at ({i},{j})"))?;
                    }
                }
                for i in 1..=m {
                    for k in (i + 1)..=m {
                        let lhs = pc(&pc(f, g, i)?, h, k + n - 1)?;
                        let rhs = pc(&pc(f, h, k)?, g, i)?;
                        ensure(lhs == rhs, || format!("parallel law at ({i},{k})"))?;
                    }
                }
                let circ = |x: &Cochain, y: &Cochain| op.circ(x, y).map_err(err);
                let assoc_gh = circ(&circ(f, g)?, h)?.sub(&circ(f, &circ(g, h)?)?);
                let assoc_hg = circ(&circ(f, h)?, g)?.sub(&circ(f, &circ(h, g)?)?);
                let want = if pre_lie_sign(n, p) {
                    assoc_hg.neg()
                } else {
                    assoc_hg
                };
                ensure(assoc_gh == want, || "graded pre-Lie identity".into())
            },
        );
    }
}

fn obstruction_cocycle(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    const PER_STRUCTURE: usize = 5;
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let mut owm = random::structure(rng, flavor, field, 3);
        let mut engine = CohomologyEngine::new(owm.clone());
        for _ in 0..20 {
            if engine
                .cocycle_coordinates(2)
                .map(|k| k.dim() > 0)
                .unwrap_or(true)
            {
                break;
            }
            owm = random::structure(rng, flavor, field, 3);
            engine = CohomologyEngine::new(owm.clone());
        }
        for k in 0..PER_STRUCTURE {
            let drawn = random::cocycle(rng, &engine, 2).map_err(err);
            t.case(
                || format!("structure {case} ({flavor}) cocycle {k}"),
                || {
                    let p1 = drawn?;
                    let theta = owm.operad().circ(&p1, &p1).map_err(err)?.neg();
                    let d_theta = owm.differential(&theta).map_err(err)?;
                    ensure(d_theta.is_zero(), || "obstruction is not a cocycle".into())
                },
            );
        }
    }
}

fn first_cohomology(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let a = random::dend_algebra(rng, field, 3);
        let flavor = if case % 2 == 0 {
            Flavor::Dend
        } else {
            Flavor::Ass
        };
        t.case(
            || {
                format!(
                    "case {case} ({flavor}, {}, d={})",
                    field_name(field),
                    a.dim()
                )
            },
            || {
                let engine = CohomologyEngine::new(structure_for(&a, flavor)?);
                let betti = engine.betti(1).map_err(err)?;
                let oracle = match flavor {
                    Flavor::Dend => derivation_space(&a),
                    _ => assoc_derivation_space(&induced_assoc(&a)),
                }
                .map_err(err)?
                .dim();
                ensure(betti == oracle, || {
                    format!("betti(1) = {betti}, derivations = {oracle}")
                })
            },
        );
    }
}

/// Whether the gauge `id + t phi` carries `(pi_0, p1)` to `(pi_0, p1_other)`.
fn gauge_certifies(
    owm: &OperadWithMultiplication,
    p1: &Cochain,
    p1_other: &Cochain,
    phi: &crate::Matrix,
) -> Result<bool, String> {
    let before = TruncatedDeformation::new(owm, vec![p1.clone()]).map_err(err)?;
    let after = TruncatedDeformation::new(owm, vec![p1_other.clone()]).map_err(err)?;
    let gauge = FormalAutomorphism::new(
        vec![crate::Matrix::identity(owm.field(), owm.dim()), phi.clone()],
        owm.operad().alpha(),
    )
    .map_err(err)?;
    Ok(gauge_transform(owm.operad(), &before, &gauge).map_err(err)? == after)
}

fn second_cohomology(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    let half = cases / 2;
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let cohomologous = case < half;
        let mut engine = CohomologyEngine::new(random::structure(rng, flavor, field, 3));
        if !cohomologous {
            for _ in 0..50 {
                if engine.betti(2).map(|b| b > 0).unwrap_or(true) {
                    break;
                }
                engine = CohomologyEngine::new(random::structure(rng, flavor, field, 3));
            }
        }
        let drawn = (|| -> Result<(Cochain, Cochain), String> {
            let p1 = random::cocycle(rng, &engine, 2).map_err(err)?;
            let shift = random::coboundary(rng, &engine, 2).map_err(err)?;
            if cohomologous {
                return Ok((p1.clone(), p1.add(&shift)));
            }
            let reps = engine.report(2).map_err(err)?.representatives;
            if reps.is_empty() {
                return Err("no structure with nonzero second cohomology found".into());
            }
            let k = rng.gen_range(0..reps.len());
            let s = field.int(*[1i64, -1, 2].get(rng.gen_range(0..3)).expect("in range"));
            Ok((p1.clone(), p1.add(&reps[k].scale(&s)).add(&shift)))
        })();
        t.case(
            || format!("case {case} ({flavor}, cohomologous={cohomologous})"),
            || {
                let (p1, p2) = drawn?;
                let owm = engine.owm();
                let witness = equivalent_infinitesimals(&engine, &p1, &p2).map_err(err)?;
                match (cohomologous, witness) {
                    (true, Some(phi)) => ensure(gauge_certifies(owm, &p1, &p2, &phi)?, || {
                        "witness does not map one infinitesimal to the other".into()
                    }),
                    (true, None) => Err("cohomologous pair reported inequivalent".into()),
                    (false, None) => Ok(()),
                    (false, Some(_)) => Err("non-cohomologous pair reported equivalent".into()),
                }
            },
        );
    }
}

fn trivialization(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    const ORDER: usize = 3;
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let engine = CohomologyEngine::new(random::structure(rng, flavor, field, 3));
        let gauge = random::formal_automorphism(rng, &engine, ORDER).map_err(err);
        t.case(
            || format!("case {case} ({flavor}, {})", field_name(field)),
            || {
                let owm = engine.owm();
                let op = owm.operad();
                let trivial = TruncatedDeformation::trivial(owm, ORDER);
                let d = gauge_transform(op, &trivial, &gauge?).map_err(err)?;
                let out = trivialize(&engine, &d).map_err(err)?;
                ensure(out.verdict == Verdict::Trivial, || {
                    format!("{:?}", out.verdict)
                })?;
                ensure(out.deformation.is_trivial(), || "terms survive".into())?;
                let restored = gauge_transform(op, &d, &out.gauge).map_err(err)?;
                ensure(restored == trivial, || "gauge does not restore pi_0".into())
            },
        );
    }
}

/// `a R(b) + R(a) b` on basis pairs, straight from the algebra.
fn rota_baxter_product(a: &HomAssocAlgebra, r: &LinearEndo) -> Tensor3 {
    let (d, f) = (a.dim(), a.field());
    let mut out = Tensor3::zeros(f, [d, d, d]);
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (unit(f, d, i), unit(f, d, j));
            let v = add(&a.mul(&x, &r.apply(&y)), &a.mul(&r.apply(&x), &y));
            for (k, c) in v.into_iter().enumerate() {
                out.set(i, j, k, c);
            }
        }
    }
    out
}

/// `m R(n) + R(m) n` on basis pairs, straight from the action tensors.
fn o_operator_product(rep: &HomRepresentation, r: &crate::Matrix) -> Tensor3 {
    let (dm, f) = (rep.module().dim(), rep.base().field());
    let mut out = Tensor3::zeros(f, [dm, dm, dm]);
    for i in 0..dm {
        for j in 0..dm {
            let (m, n) = (unit(f, dm, i), unit(f, dm, j));
            let (rm, rn) = (r.mul_vec(&m).expect("size"), r.mul_vec(&n).expect("size"));
            let v = add(
                &rep.mul_right().bilinear(&m, &rn),
                &rep.mul_left().bilinear(&rm, &n),
            );
            for (k, c) in v.into_iter().enumerate() {
                out.set(i, j, k, c);
            }
        }
    }
    out
}

fn check_rb(a: &HomAssocAlgebra, r: &LinearEndo) -> Result<(), String> {
    let out = from_rota_baxter(a, r).map_err(err)?;
    ensure(out.validate().is_valid(), || {
        "output fails validation".into()
    })?;
    ensure(
        induced_assoc(&out).mu() == &rota_baxter_product(a, r),
        || "induced product differs from a R(b) + R(a) b".into(),
    )
}

fn check_oop(rep: &HomRepresentation, r: &crate::Matrix) -> Result<(), String> {
    let out = from_o_operator(rep, r).map_err(err)?;
    ensure(out.validate().is_valid(), || {
        "output fails validation".into()
    })?;
    ensure(
        induced_assoc(&out).mu() == &o_operator_product(rep, r),
        || "induced product differs from m R(n) + R(m) n".into(),
    )
}

fn constructors(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for field in [Field::Rationals, Field::Prime(random::GF101)] {
        for (name, a, r) in catalogue::rota_baxter_examples(field) {
            t.case(
                || format!("{name} over {}", field_name(field)),
                || check_rb(&a, &r),
            );
        }
        for (name, rep, r) in catalogue::o_operator_examples(field) {
            t.case(
                || format!("{name} over {}", field_name(field)),
                || check_oop(&rep, &r),
            );
        }
    }
    let q = Field::Rationals;
    t.case(
        || "unit-action-2 gives e1 < e1 = e2".into(),
        || {
            let r =
                LinearEndo::new(crate::Matrix::from_i64(q, &[&[0, 0], &[1, 0]])).map_err(err)?;
            let out = from_rota_baxter(&catalogue::unit_action(q), &r).map_err(err)?;
            ensure(
                out.left() == &Tensor3::cube(q, 2, &[(0, 0, 1, 1)])
                    && out.right() == &Tensor3::zeros(q, [2, 2, 2]),
                || "unexpected products".into(),
            )
        },
    );
    let field = random::any_field(rng);
    let rbs = random::rota_baxter_search(rng, field, cases);
    let oops = random::o_operator_search(rng, field, cases);
    for k in 0..cases {
        t.case(
            || format!("searched Rota-Baxter operator {k}"),
            || {
                let (a, r) = rbs.get(k).ok_or("search found too few operators")?;
                check_rb(a, r)
            },
        );
        t.case(
            || format!("searched O-operator {k}"),
            || {
                let (rep, r) = oops.get(k).ok_or("search found too few operators")?;
                check_oop(rep, r)
            },
        );
    }
}

fn two_route(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let flavor = Flavor::ALL[case % 4];
        let n = 1 + (case / 4) % 3;
        let owm = random::structure(rng, flavor, field, 3);
        let engine = CohomologyEngine::new(owm.clone());
        let drawn = engine
            .basis(n)
            .map(|b| random::equivariant_cochain(rng, b))
            .map_err(err);
        t.case(
            || format!("case {case} ({flavor}, degree {n})"),
            || {
                let f = drawn?;
                let operadic = owm.differential(&f).map_err(err)?;
                let brute = brute_force_differential(&owm, &f).map_err(err)?;
                ensure(operadic == brute, || "routes disagree".into())
            },
        );
    }
}

fn duality(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let co = random::dend_algebra(rng, field, 3).dual();
        let drawn = (|| -> Result<_, String> {
            let owm = OperadWithMultiplication::codendriform(&co).map_err(err)?;
            let engine = CohomologyEngine::new(owm.clone());
            let b2 = engine.basis(2).map_err(err)?;
            let terms = vec![
                random::equivariant_cochain(rng, b2),
                random::equivariant_cochain(rng, b2),
            ];
            Ok((engine, terms))
        })();
        t.case(
            || format!("case {case} ({}, d={})", field_name(field), co.dim()),
            || {
                let (engine, terms) = drawn?;
                let dual_owm = OperadWithMultiplication::dendriform(&co.dual()).map_err(err)?;
                let expected = engine.owm().dualize();
                ensure(
                    dual_owm.pi() == expected.pi()
                        && dual_owm.operad().alpha() == expected.operad().alpha(),
                    || "dual structures differ".into(),
                )?;
                let dual_engine = CohomologyEngine::new(dual_owm.clone());
                for n in 1..=3 {
                    let (b, bd) = (
                        engine.betti(n).map_err(err)?,
                        dual_engine.betti(n).map_err(err)?,
                    );
                    ensure(b == bd, || {
                        format!("betti({n}): coalgebra {b}, algebra {bd}")
                    })?;
                }
                let d = TruncatedDeformation::new(engine.owm(), terms).map_err(err)?;
                let dd = d.dualize();
                for n in 0..=2 {
                    let defect = equation_defect(engine.owm().operad(), &d, n).map_err(err)?;
                    let dual_defect = equation_defect(dual_owm.operad(), &dd, n).map_err(err)?;
                    ensure(defect.dualize() == dual_defect, || {
                        format!("defects at order {n} are not transposes")
                    })?;
                }
                Ok(())
            },
        );
    }
}

fn untwisted_structures(a: &HomDendAlgebra, mode: TwistMode) -> Vec<OperadWithMultiplication> {
    let assoc = induced_assoc(a);
    vec![
        OperadWithMultiplication::dendriform_unchecked(a, mode),
        OperadWithMultiplication::associative_unchecked(&assoc, mode),
        OperadWithMultiplication::codendriform_unchecked(&a.dual(), mode),
        OperadWithMultiplication::coassociative_unchecked(&assoc.dual(), mode),
    ]
}

fn untwisted_regression(rng: &mut SeededRng, t: &mut Tally, cases: usize) {
    for case in 0..cases {
        let field = random::any_field(rng);
        let a = random::untwisted_dend_algebra(rng, field, 3);
        let twisted = untwisted_structures(&a, TwistMode::Twisted);
        let plain = untwisted_structures(&a, TwistMode::Untwisted);
        let mut probes: Vec<Vec<Cochain>> = Vec::new();
        for owm in &twisted {
            let op: &TwistedOperad = owm.operad();
            probes.push((1..=3).map(|n| random::cochain(rng, op, n)).collect());
        }
        t.case(
            || format!("case {case} ({}, d={})", field_name(field), a.dim()),
            || {
                for ((tw, pl), xs) in twisted.iter().zip(&plain).zip(&probes) {
                    let flavor = tw.flavor();
                    let (et, ep) = (
                        CohomologyEngine::new(tw.clone()),
                        CohomologyEngine::new(pl.clone()),
                    );
                    for n in 1..=3 {
                        let (rt, rp) = (et.report(n).map_err(err)?, ep.report(n).map_err(err)?);
                        ensure(rt == rp, || {
                            format!("{flavor} reports differ in degree {n}")
                        })?;
                    }
                    for x in xs {
                        let y = pl
                            .operad()
                            .cochain(x.degree(), x.coeffs().to_vec())
                            .map_err(err)?;
                        ensure(
                            tw.differential(x).map_err(err)?.coeffs()
                                == pl.differential(&y).map_err(err)?.coeffs(),
                            || format!("{flavor} differentials differ in degree {}", x.degree()),
                        )?;
                    }
                }
                Ok(())
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let out = run_with(s, 5, 4);
            assert!(out.passed(), "{out}");
        }
    }

    #[test]
    fn outcomes_are_deterministic() {
        assert_eq!(
            run_with(Suite::OperadLaws, 9, 6),
            run_with(Suite::OperadLaws, 9, 6)
        );
    }
}
