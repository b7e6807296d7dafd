//! Acceptance criteria. Prints one line per criterion and exits nonzero if any fails.
//!
//! Every comparison is exact (integer, rational or cyclotomic equality); the
//! runtime budgets are printed for reference and not enforced.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use lambdabench::bott_ring::{verify_bott_grid, CyclicQuotientRing};
use lambdabench::characters::{
    adams, character_table, fs_classify, in_symplectic_subgroup, verify_adjoint_is_inverse_adams,
    verify_adjoint_pairing, verify_character_table, verify_koszul_upto, verify_periodicity, verify_regular_fixed,
    verify_symplectic_adjoint, verify_virtual_sigma_grid, CharacterTable, ClassFunction, FsType, VirtualCharacter,
};
use lambdabench::exact::{int_matrix, CommRing};
use lambdabench::gamma_lattices::{verify_lattice_compatibility, verify_orbit_stabilizer_sweep, GammaLattice, LatticeError};
use lambdabench::groups::{catalog_up_to, conjugacy_classes, parse_group, ConjugacyData, FiniteGroup};
use lambdabench::partitions::partitions_of;
use lambdabench::quad_fields::{squarefree_range, verify_different_sequence, verify_graded_layers, QuadraticField};
use lambdabench::report::CheckOutcome;
use lambdabench::schur_modules::{module_from_spec, verify_cauchy_dimensions, verify_cauchy_modules, verify_schur_characters};
use lambdabench::symfunc::{verify_newton_cauchy, verify_q_specialization};

/// Every criterion compares exact values; no numeric slack anywhere.
const TOLERANCE: &str = "exact";

const MAX_NEWTON_I: usize = 6;
const MAX_Q_J: usize = 6;
const MODULE_GROUPS: [&str; 4] = ["S3", "D4", "Q8", "C6"];
const MAX_CAUCHY_I: usize = 4;
const MAX_SCHUR_WEIGHT: usize = 4;
const MAX_MODULE_DIM: usize = 3;
const CATALOG_ORDER: usize = 24;
const ORBIT_ORDER: usize = 12;
const ORBIT_RANK: usize = 2;
const ORBIT_TOTAL: usize = 6;
const SYMPLECTIC_MAX_K: u64 = 8;
const KOSZUL_MAX_DEGREE: i64 = 8;
const KOSZUL_MAX_I: usize = 4;
const LATTICE_MAX_K: usize = 3;
const LATTICE_PRIMES: [u64; 3] = [2, 3, 5];
const QUAD_MAX_ABS_D: i64 = 50;
const GRADED_D: [i64; 6] = [-1, 2, 3, 5, 7, 13];
const BOTT_MAX_M: usize = 12;
const BOTT_MAX_K: u64 = 12;
const TABLE_GROUPS: [&str; 5] = ["D4", "Q8", "S3", "S4", "A4"];
const TABLE_MAX_CYCLIC: usize = 12;

type Verdict = Result<String, String>;

struct Criterion {
    number: u8,
    name: &'static str,
    budget_s: u64,
    run: fn() -> Verdict,
}

const CRITERIA: [Criterion; 14] = [
    Criterion { number: 1, name: "newton-cauchy", budget_s: 10, run: newton_cauchy },
    Criterion { number: 2, name: "q-specialization", budget_s: 10, run: q_specialization },
    Criterion { number: 3, name: "cauchy-modules", budget_s: 30, run: cauchy_modules },
    Criterion { number: 4, name: "schur-character", budget_s: 60, run: schur_character },
    Criterion { number: 5, name: "regular-fixed", budget_s: 5, run: regular_fixed },
    Criterion { number: 6, name: "orbit-stabilizer", budget_s: 60, run: orbit_stabilizer },
    Criterion { number: 7, name: "adjoint-adams", budget_s: 10, run: adjoint_adams },
    Criterion { number: 8, name: "q8-symplectic", budget_s: 1, run: q8_symplectic },
    Criterion { number: 9, name: "koszul-and-sigma-paths", budget_s: 10, run: koszul_and_sigma_paths },
    Criterion { number: 10, name: "periodicity", budget_s: 2, run: periodicity },
    Criterion { number: 11, name: "lattice-compatibility", budget_s: 30, run: lattice_compatibility },
    Criterion { number: 12, name: "quadratic-differents", budget_s: 30, run: quadratic_differents },
    Criterion { number: 13, name: "bott-identities", budget_s: 5, run: bott_identities },
    Criterion { number: 14, name: "character-tables", budget_s: 30, run: character_tables },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let verdict = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:02} {:24} {status} [{TOLERANCE}] {secs:7.2}s (budget {}s) {detail}",
            c.number, c.name, c.budget_s
        );
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

struct Ctx {
    classes: Arc<ConjugacyData>,
    table: CharacterTable,
}

fn ctx(g: FiniteGroup) -> Ctx {
    let classes = Arc::new(conjugacy_classes(&Arc::new(g)));
    let table = character_table(&classes).expect("character table");
    Ctx { classes, table }
}

fn named(spec: &str) -> Ctx {
    ctx(parse_group(spec).expect("group spec"))
}

fn catalog(max: usize) -> Vec<Ctx> {
    catalog_up_to(max).into_iter().map(ctx).collect()
}

/// Tallies outcomes; fails with the first few counterexamples.
#[derive(Default)]
struct Tally {
    runs: usize,
    failures: Vec<String>,
}

impl Tally {
    fn outcome(&mut self, o: &CheckOutcome) {
        self.runs += 1;
        if !o.passed {
            self.failures.push(format!("{} {}", o.parameters, o.witness));
        }
    }

    fn result(&mut self, r: Result<CheckOutcome, impl std::fmt::Display>, label: &str) {
        match r {
            Ok(o) => self.outcome(&o),
            Err(e) => {
                self.runs += 1;
                self.failures.push(format!("{label}: {e}"));
            }
        }
    }

    fn require(&mut self, ok: bool, label: impl Into<String>) {
        self.runs += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn verdict(self) -> Verdict {
        if self.failures.is_empty() {
            Ok(format!("{} checks", self.runs))
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            Err(format!("{} of {} checks failed: {}", self.failures.len(), self.runs, shown.join(" | ")))
        }
    }
}

fn newton_cauchy() -> Verdict {
    let mut t = Tally::default();
    for i in 1..=MAX_NEWTON_I {
        t.result(verify_newton_cauchy(i), &format!("i={i}"));
    }
    t.verdict()
}

fn q_specialization() -> Verdict {
    let mut t = Tally::default();
    for j in 1..=MAX_Q_J {
        t.result(verify_q_specialization(j), &format!("j={j}"));
    }
    t.verdict()
}

/// Module specs of dimension 1 to 3 for each test group.
fn small_module_specs(group: &str) -> &'static [&'static str] {
    match group {
        "S3" => &["triv", "lin1", "std", "sum(lin1,std)"],
        "D4" => &["lin1", "lin3", "ind(r,1)", "sum(lin2,ind(r,1))"],
        "Q8" => &["lin1", "ind(i,1)", "sum(lin3,ind(i,1))"],
        "C6" => &["lin1", "lin5", "sum(lin1,lin2)", "sum(lin3,sum(lin4,lin5))"],
        _ => &[],
    }
}

fn cauchy_modules() -> Verdict {
    let mut t = Tally::default();
    for g in MODULE_GROUPS {
        let c = named(g);
        let mods: Vec<_> =
            small_module_specs(g).iter().map(|s| module_from_spec(&c.classes, &c.table, s).expect("module")).collect();
        for v in &mods {
            t.require(v.dim() <= MAX_MODULE_DIM, format!("{} has dimension {}", v.label(), v.dim()));
            for w in &mods {
                for i in 1..=MAX_CAUCHY_I {
                    t.result(verify_cauchy_modules(v, w, i), &format!("{g} {} {} i={i}", v.label(), w.label()));
                    t.outcome(&verify_cauchy_dimensions(v, w, i));
                }
            }
        }
    }
    t.verdict()
}

fn schur_character() -> Verdict {
    let mut t = Tally::default();
    let shapes: Vec<_> = (1..=MAX_SCHUR_WEIGHT).flat_map(partitions_of).collect();
    for g in MODULE_GROUPS {
        let c = named(g);
        for spec in small_module_specs(g) {
            let v = module_from_spec(&c.classes, &c.table, spec).expect("module");
            for lambda in &shapes {
                t.result(verify_schur_characters(&v, lambda), &format!("{g} {spec} {lambda}"));
            }
        }
    }
    t.verdict()
}

fn regular_fixed() -> Verdict {
    let mut t = Tally::default();
    for c in catalog(CATALOG_ORDER) {
        let n = c.classes.order() as i64;
        for k in (1..=2 * n).filter(|k| num_integer::gcd(*k, n) == 1) {
            t.outcome(&verify_regular_fixed(&c.classes, k));
        }
    }
    let control = verify_regular_fixed(&named("C4").classes, 2);
    t.require(!control.passed && !control.hypothesis_holds, "C4 with k=2 must fail outside the hypothesis");
    t.verdict().map(|d| format!("{d}, C4 k=2 control fails as required"))
}

fn orbit_stabilizer() -> Verdict {
    let mut t = Tally::default();
    for c in catalog(ORBIT_ORDER) {
        match verify_orbit_stabilizer_sweep(&c.classes, ORBIT_RANK, ORBIT_TOTAL) {
            Ok(o) => {
                let skipped = o.witness["skipped_overflow"].as_array().map_or(0, Vec::len);
                t.require(skipped == 0, format!("{} skipped {skipped} power lists", c.classes.group().name()));
                t.outcome(&o);
            }
            Err(e) => t.require(false, format!("{}: {e}", c.classes.group().name())),
        }
    }
    t.verdict()
}

fn inverse_mod(k: u64, e: u64) -> u64 {
    (1..=e).find(|x| (k * x) % e == 1 % e).expect("unit")
}

fn adjoint_adams() -> Verdict {
    let mut t = Tally::default();
    for c in catalog(CATALOG_ORDER) {
        let (n, e) = (c.classes.order() as u64, c.classes.exponent() as u64);
        for k in 1..=2 * e {
            t.outcome(&verify_adjoint_pairing(&c.table, k));
            if num_integer::gcd(k, n) == 1 {
                t.result(verify_adjoint_is_inverse_adams(&c.table, k, inverse_mod(k, e)), &format!("k={k}"));
            }
        }
    }
    t.verdict()
}

fn q8_symplectic() -> Verdict {
    let c = named("Q8");
    let fs = fs_classify(&c.table).map_err(|e| e.to_string())?;
    let h = fs.types.iter().position(|t| *t == FsType::Quaternionic).ok_or("no quaternionic irreducible")?;
    let psi2 = c.table.decompose(&adams(c.table.row(h), 2)).map_err(|e| e.to_string())?;
    // -triv + three sign characters
    let expected = VirtualCharacter::from_i64(&[-1, 1, 1, 1, 0]);
    let mut t = Tally::default();
    t.require(psi2 == expected, format!("psi^2 of the quaternionic character is {psi2:?}"));
    t.require(!in_symplectic_subgroup(&fs, &psi2).member, "psi^2 of the quaternionic character is symplectic");
    t.result(verify_symplectic_adjoint(&c.table, SYMPLECTIC_MAX_K), "adjoint");
    t.verdict().map(|d| format!("{d}, psi^2(chi_H) = {:?} outside the symplectic subgroup", expected.coeffs))
}

/// Irreducibles and sums of two irreducibles up to the degree bound.
fn small_characters(table: &CharacterTable, max_degree: i64) -> Vec<ClassFunction> {
    let d = table.degrees();
    let mut out = Vec::new();
    for a in 0..table.len() {
        if d[a] <= max_degree {
            out.push(table.row(a).clone());
        }
        for b in a..table.len() {
            if d[a] + d[b] <= max_degree {
                out.push(table.row(a).add_ref(table.row(b)));
            }
        }
    }
    out
}

fn koszul_and_sigma_paths() -> Verdict {
    let mut t = Tally::default();
    for c in catalog(CATALOG_ORDER) {
        for chi in small_characters(&c.table, KOSZUL_MAX_DEGREE) {
            match verify_koszul_upto(&c.table, &chi, KOSZUL_MAX_I) {
                Ok(v) => v.iter().for_each(|o| t.outcome(o)),
                Err(e) => t.require(false, e.to_string()),
            }
        }
        match verify_virtual_sigma_grid(&c.table, KOSZUL_MAX_DEGREE, KOSZUL_MAX_I) {
            Ok(v) => v.iter().for_each(|o| t.outcome(o)),
            Err(e) => t.require(false, e.to_string()),
        }
    }
    t.verdict()
}

fn periodicity() -> Verdict {
    let mut t = Tally::default();
    for c in catalog(CATALOG_ORDER) {
        let e = c.classes.exponent() as i64;
        for k in 1..=2 * e {
            t.outcome(&verify_periodicity(&c.table, k));
        }
    }
    t.verdict()
}

/// Three nonsingular equivariant matrices per group; circulants commute with the regular action.
fn lattice_cases() -> [(&'static str, [Vec<Vec<i64>>; 3]); 2] {
    [
        ("C2", [vec![vec![2, 1], vec![1, 2]], vec![vec![3, 1], vec![1, 3]], vec![vec![1, 2], vec![2, 1]]]),
        (
            "C3",
            [
                vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
                vec![vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]],
                vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]],
            ],
        ),
    ]
}

fn lattice_compatibility() -> Verdict {
    let mut t = Tally::default();
    let mut refused = 0;
    for (g, betas) in lattice_cases() {
        let c = named(g);
        let f = GammaLattice::free(c.classes.group(), 1);
        let order = c.classes.order();
        let betas: Vec<_> = betas.iter().map(|b| int_matrix(b)).collect();
        for k in 1..=LATTICE_MAX_K {
            for p in LATTICE_PRIMES {
                for beta in &betas {
                    let r = verify_lattice_compatibility(&f, std::slice::from_ref(beta), &[k], p);
                    if num_integer::gcd(k, order) == 1 {
                        t.result(r, &format!("{g} k={k} p={p}"));
                    } else {
                        let ok = matches!(r, Err(LatticeError::Precondition(_)));
                        t.require(ok, format!("{g} k={k} must be refused"));
                        refused += 1;
                    }
                }
                if num_integer::gcd(k, order) == 1 {
                    let r = verify_lattice_compatibility(&f, &betas[..2], &[k, 1], p);
                    t.result(r, &format!("{g} product k={k} p={p}"));
                }
            }
        }
    }
    t.verdict().map(|d| format!("{d}, {refused} non-coprime powers refused"))
}

fn quadratic_differents() -> Verdict {
    let mut t = Tally::default();
    for d in squarefree_range(-QUAD_MAX_ABS_D, QUAD_MAX_ABS_D) {
        match QuadraticField::new(d) {
            Ok(q) => t.outcome(&verify_different_sequence(&q)),
            Err(e) => t.require(false, format!("D={d}: {e}")),
        }
    }
    for d in GRADED_D {
        let q = QuadraticField::new(d).map_err(|e| e.to_string())?;
        t.outcome(&verify_graded_layers(&q));
    }
    t.verdict()
}

fn bott_identities() -> Verdict {
    let mut t = Tally::default();
    t.outcome(&verify_bott_grid(BOTT_MAX_M, BOTT_MAX_K));
    for m in 1..=BOTT_MAX_M {
        let ring = CyclicQuotientRing::new(m).map_err(|e| e.to_string())?;
        for k in 1..=BOTT_MAX_K {
            let theta = ring.bott_element(k).map_err(|e| e.to_string())?;
            t.require(theta.augmentation() == k as i64, format!("augmentation of theta^{k} mod x^{m}-1"));
        }
    }
    t.verdict()
}

fn character_tables() -> Verdict {
    let mut t = Tally::default();
    let groups = (1..=TABLE_MAX_CYCLIC).map(|n| format!("C{n}")).chain(TABLE_GROUPS.iter().map(|s| s.to_string()));
    for g in groups {
        let classes = Arc::new(conjugacy_classes(&Arc::new(parse_group(&g).expect("group"))));
        let o = verify_character_table(&classes);
        t.require(o.witness["closed_form_match"] == true, format!("{g}: no closed-form comparison"));
        t.outcome(&o);
    }
    t.verdict()
}
