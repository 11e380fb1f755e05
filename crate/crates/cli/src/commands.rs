use std::fmt::Write as _;
use std::path::Path;

use homdend_core::checks::{self, CheckOutcome, Suite};
use homdend_core::cohomology::{assoc_derivation_space, derivation_space};
use homdend_core::deformation::{
    check_deformation, extend, is_infinitesimal, trivialize, Extension, Verdict,
};
use homdend_core::structures::{
    check_o_operator, check_rota_baxter, from_o_operator, from_rota_baxter, induced_assoc,
    induced_lie_brackets, induced_prelie,
};
use homdend_core::{
    Cochain, CohomologyEngine, Flavor, Matrix, OperadWithMultiplication, Scalar, Tensor3,
    TruncatedDeformation, TwistMode, ValidationReport,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{
    cochain_json, cochain_spec, matrix_json, scalar_text, tensor_json, violations_json, Loaded,
    Structure, StructureFile, SCHEMA,
};
use crate::{Command, DeformAction, Options, Report};

pub fn dispatch(command: &Command, opts: &Options) -> Result<Report, CliError> {
    match command {
        Command::Check(i) => check(&read(&i.file)?),
        Command::Cohomology {
            input,
            flavor,
            max_degree,
        } => {
            let l = load(&input.file, opts)?;
            let flavor = match flavor {
                Some(f) => f.parse().map_err(CliError::Usage)?,
                None => natural(&l)?,
            };
            cohomology(&l, flavor, *max_degree, opts)
        }
        Command::Derivations(i) => derivations(&load(&i.file, opts)?, opts),
        Command::Induced(i) => induced(&load(&i.file, opts)?),
        Command::FromRotaBaxter(i) => rota_baxter(&load(&i.file, opts)?),
        Command::FromOOperator(i) => o_operator(&load(&i.file, opts)?),
        Command::Dualize(i) => dualize(&load(&i.file, opts)?),
        Command::Deform {
            action,
            input,
            order,
        } => deform(&load(&input.file, opts)?, *action, *order, opts),
        Command::Selftest { seed, suite, cases } => selftest(*seed, suite.as_deref(), *cases),
    }
}

fn read(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    StructureFile::parse(&text)?.load()
}

fn load(path: &Path, opts: &Options) -> Result<Loaded, CliError> {
    let l = read(path)?;
    if opts.validate {
        let report = l.structure.validate();
        if !report.is_valid() {
            return Err(CliError::invalid("structure is invalid", report));
        }
    }
    Ok(l)
}

fn natural(l: &Loaded) -> Result<Flavor, CliError> {
    l.structure
        .natural_flavor()
        .ok_or_else(|| CliError::Usage("representations have no cochain complex".into()))
}

fn owm(l: &Loaded, flavor: Flavor, opts: &Options) -> Result<OperadWithMultiplication, CliError> {
    use Flavor::*;
    let t = TwistMode::Twisted;
    let checked = opts.validate;
    let owm = match (&l.structure, flavor) {
        (Structure::Dend(a), Dend) if checked => OperadWithMultiplication::dendriform(a)?,
        (Structure::Dend(a), Dend) => OperadWithMultiplication::dendriform_unchecked(a, t),
        (Structure::Dend(a), Ass) => {
            OperadWithMultiplication::associative_unchecked(&induced_assoc(a), t)
        }
        (Structure::Dend(a), CoDend) => {
            OperadWithMultiplication::codendriform_unchecked(&a.dual(), t)
        }
        (Structure::Dend(a), CoAss) => {
            OperadWithMultiplication::coassociative_unchecked(&a.dual().induced_coassoc(), t)
        }
        (Structure::Assoc(a), Ass) if checked => OperadWithMultiplication::associative(a)?,
        (Structure::Assoc(a), Ass) => OperadWithMultiplication::associative_unchecked(a, t),
        (Structure::Assoc(a), CoAss) => {
            OperadWithMultiplication::coassociative_unchecked(&a.dual(), t)
        }
        (Structure::DendCoalg(c), CoDend) if checked => OperadWithMultiplication::codendriform(c)?,
        (Structure::DendCoalg(c), CoDend) => OperadWithMultiplication::codendriform_unchecked(c, t),
        (Structure::DendCoalg(c), CoAss) => {
            OperadWithMultiplication::coassociative_unchecked(&c.induced_coassoc(), t)
        }
        (Structure::DendCoalg(c), Dend) => {
            OperadWithMultiplication::dendriform_unchecked(&c.dual(), t)
        }
        (Structure::DendCoalg(c), Ass) => {
            OperadWithMultiplication::associative_unchecked(&induced_assoc(&c.dual()), t)
        }
        (Structure::AssocCoalg(c), CoAss) if checked => OperadWithMultiplication::coassociative(c)?,
        (Structure::AssocCoalg(c), CoAss) => {
            OperadWithMultiplication::coassociative_unchecked(c, t)
        }
        (Structure::AssocCoalg(c), Ass) => {
            OperadWithMultiplication::associative_unchecked(&c.dual(), t)
        }
        (s, f) => {
            return Err(CliError::Usage(format!(
                "flavor {f} is not available for a {} structure",
                kind_name(s)
            )))
        }
    };
    Ok(owm)
}

fn engine(l: &Loaded, flavor: Flavor, opts: &Options) -> Result<CohomologyEngine, CliError> {
    Ok(CohomologyEngine::with_cap(
        owm(l, flavor, opts)?,
        opts.degree_cap,
    ))
}

fn kind_name(s: &Structure) -> &'static str {
    match s {
        Structure::Assoc(_) => "hom-assoc",
        Structure::Dend(_) => "hom-dend",
        Structure::DendCoalg(_) => "hom-dend-coalg",
        Structure::AssocCoalg(_) => "hom-assoc-coalg",
        Structure::Representation(_) => "representation",
    }
}

fn header(l: &Loaded) -> String {
    format!(
        "{} of dimension {} over {}",
        kind_name(&l.structure),
        l.structure.dim(),
        l.field()
    )
}

fn base_json(command: &str, l: &Loaded) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "kind": kind_name(&l.structure),
        "dim": l.structure.dim(),
        "field": l.field().to_string(),
    })
}

struct Names(Vec<String>);

impl Names {
    fn of(l: &Loaded) -> Names {
        Names::new(l.basis_names.clone(), l.structure.dim())
    }

    fn new(names: Option<Vec<String>>, d: usize) -> Names {
        Names(names.unwrap_or_else(|| (1..=d).map(|i| format!("e{i}")).collect()))
    }

    fn get(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// `2 e1 - 1/2 e3`, or `0`.
    fn combo(&self, terms: &[(usize, &Scalar)]) -> String {
        let mut out = String::new();
        for &(k, x) in terms {
            let text = scalar_text(x);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push(' ');
            }
            out.push_str(self.get(k));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// One line per nonzero product `x op y`.
fn product_lines(out: &mut String, t: &Tensor3, op: &str, names: &Names) {
    let [di, dj, dk] = t.dims();
    for i in 0..di {
        for j in 0..dj {
            let terms: Vec<(usize, &Scalar)> = (0..dk)
                .map(|k| (k, t.get(i, j, k)))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            if !terms.is_empty() {
                let _ = writeln!(
                    out,
                    "  {} {op} {} = {}",
                    names.get(i),
                    names.get(j),
                    names.combo(&terms)
                );
            }
        }
    }
}

fn coproduct_lines(out: &mut String, t: &Tensor3, op: &str, names: &Names) {
    let [d, _, _] = t.dims();
    for k in 0..d {
        let mut parts = Vec::new();
        for (i, j) in (0..d).flat_map(|i| (0..d).map(move |j| (i, j))) {
            let x = t.get(k, i, j);
            if !x.is_zero() {
                parts.push(format!(
                    "({}) {} (x) {}",
                    scalar_text(x),
                    names.get(i),
                    names.get(j)
                ));
            }
        }
        if !parts.is_empty() {
            let _ = writeln!(out, "  {op}({}) = {}", names.get(k), parts.join(" + "));
        }
    }
}

fn matrix_lines(out: &mut String, m: &Matrix, indent: &str) {
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(scalar_text).collect();
        let _ = writeln!(out, "{indent}[{}]", cells.join(", "));
    }
}

fn cochain_lines(out: &mut String, c: &Cochain, names: &Names, indent: &str) {
    let spec = cochain_spec(c, None);
    if spec.entries.is_empty() {
        let _ = writeln!(out, "{indent}0");
    }
    let join = |ix: &[usize]| {
        ix.iter()
            .map(|&i| names.get(i - 1))
            .collect::<Vec<_>>()
            .join(", ")
    };
    for e in &spec.entries {
        let _ = writeln!(
            out,
            "{indent}[{}] ({}) -> ({}) : {}",
            e.label,
            join(&e.inputs),
            join(&e.outputs),
            coeff_str(&e.coeff)
        );
    }
}

fn coeff_str(c: &crate::format::Coeff) -> String {
    match c {
        crate::format::Coeff::Int(n) => n.to_string(),
        crate::format::Coeff::Text(s) => s.clone(),
    }
}

fn report_section(out: &mut String, title: &str, r: &ValidationReport) {
    if r.is_valid() {
        let _ = writeln!(out, "{title}: valid");
    } else {
        let _ = writeln!(out, "{title}: {} violation(s)", r.violations.len());
        for v in &r.violations {
            let _ = writeln!(out, "  {v}");
        }
    }
}

fn check(l: &Loaded) -> Result<Report, CliError> {
    let mut text = format!("{}\n", header(l));
    let mut json = base_json("check", l);
    let structure = l.structure.validate();
    report_section(&mut text, "structure", &structure);
    let mut failed = !structure.is_valid();
    json["valid"] = json!(structure.is_valid());
    json["violations"] = violations_json(&structure);
    if let (Some(r), Structure::Assoc(a)) = (&l.rota_baxter, &l.structure) {
        let rep = check_rota_baxter(a, r)?;
        report_section(&mut text, "rota-baxter operator", &rep);
        failed |= !rep.is_valid();
        json["rota_baxter"] =
            json!({ "valid": rep.is_valid(), "violations": violations_json(&rep) });
    }
    if let (Some(r), Structure::Representation(rep)) = (&l.o_operator, &l.structure) {
        let res = check_o_operator(rep, r)?;
        report_section(&mut text, "o-operator", &res);
        failed |= !res.is_valid();
        json["o_operator"] =
            json!({ "valid": res.is_valid(), "violations": violations_json(&res) });
    }
    Ok(Report { text, json, failed })
}

fn cohomology(
    l: &Loaded,
    flavor: Flavor,
    max_degree: usize,
    opts: &Options,
) -> Result<Report, CliError> {
    if max_degree == 0 {
        return Err(CliError::Usage("--max-degree must be at least 1".into()));
    }
    let engine = engine(l, flavor, opts)?;
    let names = Names::of(l);
    let mut text = format!(
        "{}\nflavor {flavor}, degree cap {}\n",
        header(l),
        opts.degree_cap
    );
    let _ = writeln!(
        text,
        "{:>3} {:>9} {:>9} {:>13} {:>6}",
        "n", "cochains", "cocycles", "coboundaries", "betti"
    );
    let mut reports = Vec::new();
    for n in 1..=max_degree {
        let r = engine.report(n)?;
        let _ = writeln!(
            text,
            "{:>3} {:>9} {:>9} {:>13} {:>6}",
            n, r.dim_cochains, r.dim_cocycles, r.dim_coboundaries, r.betti
        );
        reports.push(r);
    }
    let mut degrees = Vec::new();
    for r in &reports {
        for (k, c) in r.representatives.iter().enumerate() {
            let _ = writeln!(text, "H^{} class {}:", r.degree, k + 1);
            cochain_lines(&mut text, c, &names, "  ");
        }
        degrees.push(json!({
            "degree": r.degree,
            "cochains": r.dim_cochains,
            "cocycles": r.dim_cocycles,
            "coboundaries": r.dim_coboundaries,
            "betti": r.betti,
            "representatives": r.representatives.iter().map(cochain_json).collect::<Vec<_>>(),
        }));
    }
    let mut json = base_json("cohomology", l);
    json["flavor"] = json!(flavor.name());
    json["degree_cap"] = json!(opts.degree_cap);
    json["degrees"] = Value::Array(degrees);
    Ok(Report {
        text,
        json,
        failed: false,
    })
}

fn derivations(l: &Loaded, opts: &Options) -> Result<Report, CliError> {
    let (space, transpose) = match &l.structure {
        Structure::Dend(a) => (derivation_space(a)?, false),
        Structure::Assoc(a) => (assoc_derivation_space(a)?, false),
        Structure::DendCoalg(c) => (derivation_space(&c.dual())?, true),
        Structure::AssocCoalg(c) => (assoc_derivation_space(&c.dual())?, true),
        Structure::Representation(_) => {
            return Err(CliError::Usage(
                "derivations need an algebra or coalgebra".into(),
            ))
        }
    };
    let d = l.structure.dim();
    let field = l.field();
    let matrices: Vec<Matrix> = space
        .vectors()
        .iter()
        .map(|v| {
            let mut m = Matrix::zeros(field, d, d);
            for p in 0..d {
                for q in 0..d {
                    let (r, c) = if transpose { (q, p) } else { (p, q) };
                    m[(r, c)] = v[q * d + p].clone();
                }
            }
            m
        })
        .collect();
    let h1 = engine(l, natural(l)?, opts)?.betti(1)?;
    let what = if transpose {
        "coderivations"
    } else {
        "derivations"
    };
    let mut text = format!(
        "{}\n{what} commuting with alpha: dimension {}\n",
        header(l),
        matrices.len()
    );
    let _ = writeln!(text, "betti(1) = {h1}");
    for (k, m) in matrices.iter().enumerate() {
        let _ = writeln!(text, "basis element {}:", k + 1);
        matrix_lines(&mut text, m, "  ");
    }
    let mut json = base_json("derivations", l);
    json["dimension"] = json!(matrices.len());
    json["betti_1"] = json!(h1);
    json["basis"] = Value::Array(matrices.iter().map(matrix_json).collect());
    Ok(Report {
        text,
        json,
        failed: false,
    })
}

fn induced(l: &Loaded) -> Result<Report, CliError> {
    let names = Names::of(l);
    let mut text = format!("{}\n", header(l));
    let mut json = base_json("induced", l);
    match &l.structure {
        Structure::Dend(a) => {
            let star = induced_assoc(a);
            let assoc_report = star.validate();
            let prelie = induced_prelie(a)?;
            let brackets = induced_lie_brackets(a)?;
            text.push_str("associative product a * b = a prec b + a succ b:\n");
            product_lines(&mut text, star.mu(), "*", &names);
            report_section(&mut text, "hom-associativity", &assoc_report);
            text.push_str("pre-Lie product a <> b = a succ b - b prec a:\n");
            product_lines(&mut text, &prelie.diamond, "<>", &names);
            report_section(&mut text, "left hom-pre-Lie identity", &prelie.report);
            text.push_str("commutator bracket of *:\n");
            product_lines(&mut text, &brackets.from_assoc, "[,]", &names);
            let _ = writeln!(
                text,
                "brackets of * and <> {}",
                if brackets.coincide() {
                    "coincide"
                } else {
                    "differ"
                }
            );
            json["assoc"] =
                json!({ "mu": tensor_json(star.mu()), "valid": assoc_report.is_valid() });
            json["prelie"] = json!({ "product": tensor_json(&prelie.diamond), "valid": prelie.report.is_valid() });
            json["bracket"] = json!({
                "from_assoc": tensor_json(&brackets.from_assoc),
                "from_prelie": tensor_json(&brackets.from_prelie),
                "coincide": brackets.coincide(),
            });
        }
        Structure::DendCoalg(c) => {
            let co = c.induced_coassoc();
            let rep = co.validate();
            text.push_str("coassociative coproduct Delta = Delta_prec + Delta_succ:\n");
            coproduct_lines(&mut text, co.delta(), "Delta", &names);
            report_section(&mut text, "hom-coassociativity", &rep);
            json["coassoc"] = json!({
                "codelta": StructureFile::from_structure(&Structure::AssocCoalg(co.clone())).codelta,
                "valid": rep.is_valid(),
            });
        }
        s => {
            return Err(CliError::Usage(format!(
                "induced structures need a hom-dend or hom-dend-coalg file, got {}",
                kind_name(s)
            )))
        }
    }
    Ok(Report {
        text,
        json,
        failed: false,
    })
}

fn structure_report(command: &str, file: StructureFile) -> Report {
    let text = file.to_json();
    let json = json!({
        "schema": SCHEMA,
        "command": command,
        "structure": serde_json::to_value(&file).expect("plain data"),
    });
    Report {
        text,
        json,
        failed: false,
    }
}

fn rota_baxter(l: &Loaded) -> Result<Report, CliError> {
    let (Structure::Assoc(a), Some(r)) = (&l.structure, &l.rota_baxter) else {
        return Err(CliError::Usage(
            "from-rota-baxter needs a hom-assoc file with rota_baxter".into(),
        ));
    };
    let dend = from_rota_baxter(a, r)?;
    let mut file = StructureFile::from_structure(&Structure::Dend(dend));
    file.basis_names = l.basis_names.clone();
    Ok(structure_report("from-rota-baxter", file))
}

fn o_operator(l: &Loaded) -> Result<Report, CliError> {
    let (Structure::Representation(rep), Some(r)) = (&l.structure, &l.o_operator) else {
        return Err(CliError::Usage(
            "from-o-operator needs a representation file with o_operator".into(),
        ));
    };
    let dend = from_o_operator(rep, r)?;
    Ok(structure_report(
        "from-o-operator",
        StructureFile::from_structure(&Structure::Dend(dend)),
    ))
}

fn dualize(l: &Loaded) -> Result<Report, CliError> {
    let flavor = natural(l)?;
    let dual = match &l.structure {
        Structure::Dend(a) => Structure::DendCoalg(a.dual()),
        Structure::DendCoalg(c) => Structure::Dend(c.dual()),
        Structure::Assoc(a) => Structure::AssocCoalg(a.dual()),
        Structure::AssocCoalg(c) => Structure::Assoc(c.dual()),
        Structure::Representation(_) => unreachable!("natural flavor exists"),
    };
    let flip = |specs: &[crate::format::CochainSpec], what: &str| -> Result<Vec<_>, CliError> {
        specs
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let c = l.cochain(s, flavor, &format!("{what}[{}]", k + 1))?;
                Ok(cochain_spec(&c.dualize(), s.name.clone()))
            })
            .collect()
    };
    let out = Loaded {
        structure: dual,
        rota_baxter: None,
        o_operator: None,
        cochains: flip(&l.cochains, "cochains")?,
        deformation: flip(&l.deformation, "deformation")?,
        basis_names: l.basis_names.clone(),
    };
    Ok(structure_report(
        "dualize",
        StructureFile::from_loaded(&out),
    ))
}

fn deformation(
    l: &Loaded,
    owm: &OperadWithMultiplication,
    order: Option<usize>,
) -> Result<TruncatedDeformation, CliError> {
    let flavor = owm.flavor();
    let mut terms = l
        .deformation
        .iter()
        .enumerate()
        .map(|(k, s)| l.cochain(s, flavor, &format!("deformation[{}]", k + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let order = order.unwrap_or(terms.len().max(1));
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    terms.truncate(order);
    while terms.len() < order {
        terms.push(owm.operad().zero(2));
    }
    Ok(TruncatedDeformation::new(owm, terms)?)
}

fn terms_json(d: &TruncatedDeformation) -> Value {
    Value::Array(d.terms()[1..].iter().map(cochain_json).collect())
}

fn terms_text(out: &mut String, d: &TruncatedDeformation, names: &Names) {
    for (i, c) in d.terms().iter().enumerate().skip(1) {
        let _ = writeln!(out, "pi_{i}:");
        cochain_lines(out, c, names, "  ");
    }
}

fn deform(
    l: &Loaded,
    action: DeformAction,
    order: Option<usize>,
    opts: &Options,
) -> Result<Report, CliError> {
    let engine = engine(l, natural(l)?, opts)?;
    let d = deformation(l, engine.owm(), order)?;
    let n = d.order();
    let names = Names::of(l);
    let mut text = format!("{}\n", header(l));
    let mut json = base_json("deform", l);
    json["order"] = json!(n);
    let mut failed = false;
    match action {
        DeformAction::Check => {
            json["action"] = json!("check");
            let report = check_deformation(engine.owm().operad(), &d)?;
            if report.is_valid() {
                let _ = writeln!(text, "valid to order {n}");
            } else {
                failed = true;
                let _ = writeln!(
                    text,
                    "invalid: equations fail at order(s) {:?}",
                    report.failing_orders()
                );
                for f in &report.failures {
                    let _ = writeln!(text, "defect at order {}:", f.order);
                    cochain_lines(&mut text, &f.defect, &names, "  ");
                }
            }
            json["valid"] = json!(report.is_valid());
            json["failures"] = Value::Array(
                report
                    .failures
                    .iter()
                    .map(|f| json!({ "order": f.order, "defect": cochain_json(&f.defect) }))
                    .collect(),
            );
        }
        DeformAction::Classify => {
            json["action"] = json!("classify");
            let inf = is_infinitesimal(&engine, d.term(1))?;
            let betti2 = engine.betti(2)?;
            let _ = writeln!(
                text,
                "betti(2) = {betti2}{}",
                if betti2 == 0 { " (rigid)" } else { "" }
            );
            if !inf.is_cocycle {
                failed = true;
                text.push_str("pi_1 is not a 2-cocycle\n");
            } else if inf.is_trivial_class {
                text.push_str("pi_1 is a coboundary: the infinitesimal is trivial\n");
            } else {
                text.push_str("pi_1 is a nontrivial class; canonical representative:\n");
            }
            if let Some(c) = inf.class.as_ref().filter(|_| !inf.is_trivial_class) {
                cochain_lines(&mut text, c, &names, "  ");
            }
            json["betti_2"] = json!(betti2);
            json["is_cocycle"] = json!(inf.is_cocycle);
            json["trivial_class"] = json!(inf.is_trivial_class);
            json["class"] = inf.class.as_ref().map(cochain_json).unwrap_or(Value::Null);
        }
        DeformAction::Trivialize => {
            json["action"] = json!("trivialize");
            let t = trivialize(&engine, &d)?;
            match &t.verdict {
                Verdict::Trivial => {
                    let _ = writeln!(text, "trivial to order {n}");
                    json["verdict"] = json!("trivial");
                }
                Verdict::Nontrivial { order, class } => {
                    let _ = writeln!(text, "nontrivial: order {order} term is a nonzero class");
                    cochain_lines(&mut text, class, &names, "  ");
                    json["verdict"] = json!("nontrivial");
                    json["nontrivial_order"] = json!(order);
                    json["class"] = cochain_json(class);
                }
            }
            text.push_str("gauge components:\n");
            for (i, m) in t.gauge.components().iter().enumerate().skip(1) {
                let _ = writeln!(text, "  Phi_{i}:");
                matrix_lines(&mut text, m, "    ");
            }
            text.push_str("gauged deformation:\n");
            terms_text(&mut text, &t.deformation, &names);
            json["gauge"] =
                Value::Array(t.gauge.components()[1..].iter().map(matrix_json).collect());
            json["deformation"] = terms_json(&t.deformation);
        }
        DeformAction::Extend => {
            json["action"] = json!("extend");
            match extend(&engine, &d)? {
                Extension::Extended {
                    deformation,
                    solution_space_dim,
                } => {
                    let _ = writeln!(text, "extends to order {}", n + 1);
                    let _ = writeln!(text, "new term is unique up to a {solution_space_dim}-dimensional space of 2-cocycles");
                    terms_text(&mut text, &deformation, &names);
                    json["extended"] = json!(true);
                    json["solution_space_dim"] = json!(solution_space_dim);
                    json["deformation"] = terms_json(&deformation);
                }
                Extension::Obstructed(obs) => {
                    let _ = writeln!(text, "obstructed at order {}: nonzero class in H^3", n + 1);
                    cochain_lines(&mut text, &obs.representative, &names, "  ");
                    json["extended"] = json!(false);
                    json["obstruction"] = cochain_json(&obs.representative);
                }
            }
        }
    }
    Ok(Report { text, json, failed })
}

fn selftest(seed: u64, suite: Option<&str>, cases: Option<usize>) -> Result<Report, CliError> {
    let suites: Vec<Suite> = match suite {
        Some(name) => vec![Suite::from_name(name).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!(
                "unknown suite '{name}' (known: {})",
                known.join(", ")
            ))
        })?],
        None => Suite::ALL.to_vec(),
    };
    if cases == Some(0) {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let outcomes: Vec<CheckOutcome> = suites
        .iter()
        .map(|&s| checks::run_with(s, seed, cases.unwrap_or_else(|| s.default_cases())))
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let mut text = format!("selftest seed {seed}\n");
    for o in &outcomes {
        let _ = writeln!(text, "{o}");
    }
    let _ = writeln!(text, "{passed}/{} suites passed", outcomes.len());
    let json = json!({
        "schema": SCHEMA,
        "command": "selftest",
        "seed": seed,
        "passed": passed,
        "suites": outcomes.iter().map(|o| json!({
            "name": o.suite.name(),
            "cases": o.cases,
            "failed": o.failed,
            "passed": o.passed(),
            "examples": o.examples,
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json,
        failed: passed != outcomes.len(),
    })
}
