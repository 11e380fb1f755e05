//! The JSON structure file (schema 1) and its conversion to and from core
//! types. Basis, label and argument indices in files are 1-based.

use homdend_core::structures::ValidationReport;
use homdend_core::{
    Cochain, Field, Flavor, HomAssocAlgebra, HomAssocCoalgebra, HomDendAlgebra, HomDendCoalgebra,
    HomRepresentation, HomVectorSpace, LinearEndo, Matrix, Scalar, Tensor3,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    HomAssoc,
    HomDend,
    HomDendCoalg,
    HomAssocCoalg,
    Representation,
}

/// A scalar literal: an integer or a string such as `"-3/4"` or `"5 mod 7"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

/// Product entry: `e_i . e_j` has coefficient `coeff` on `e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Coeff,
}

/// Coproduct entry: `Delta(e_k)` has coefficient `coeff` on `e_i (x) e_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoEntry {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub coeff: Coeff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<Coeff>>>,
    /// `a . m`: `i` indexes the algebra, `j` and `k` the module.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<Entry>,
    /// `m . a`: `i` and `k` index the module, `j` the algebra.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<Entry>,
}

/// One coefficient of a cochain. Algebra flavors take `dim` inputs and one
/// output, coalgebra flavors one input and `dim` outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    #[serde(default = "first_label")]
    pub label: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub coeff: Coeff,
}

fn first_label() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    #[serde(default)]
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub schema: u32,
    pub field: String,
    pub kind: Kind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mu: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prec: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub succ: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub codelta: Vec<CoEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coprec: Vec<CoEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cosucc: Vec<CoEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rota_baxter: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub o_operator: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cochains: Vec<CochainSpec>,
    /// Terms `pi_1, pi_2, ..` of a truncated deformation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deformation: Vec<CochainSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    Assoc(HomAssocAlgebra),
    Dend(HomDendAlgebra),
    DendCoalg(HomDendCoalgebra),
    AssocCoalg(HomAssocCoalgebra),
    Representation(HomRepresentation),
}

impl Structure {
    pub fn field(&self) -> Field {
        match self {
            Structure::Assoc(a) => a.field(),
            Structure::Dend(a) => a.field(),
            Structure::DendCoalg(c) => c.field(),
            Structure::AssocCoalg(c) => c.field(),
            Structure::Representation(r) => r.base().field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Structure::Assoc(a) => a.dim(),
            Structure::Dend(a) => a.dim(),
            Structure::DendCoalg(c) => c.dim(),
            Structure::AssocCoalg(c) => c.dim(),
            Structure::Representation(r) => r.module().dim(),
        }
    }

    /// The flavor whose cochains the file's `cochains` and `deformation` use.
    pub fn natural_flavor(&self) -> Option<Flavor> {
        match self {
            Structure::Assoc(_) => Some(Flavor::Ass),
            Structure::Dend(_) => Some(Flavor::Dend),
            Structure::DendCoalg(_) => Some(Flavor::CoDend),
            Structure::AssocCoalg(_) => Some(Flavor::CoAss),
            Structure::Representation(_) => None,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Structure::Assoc(a) => a.validate(),
            Structure::Dend(a) => a.validate(),
            Structure::DendCoalg(c) => c.validate(),
            Structure::AssocCoalg(c) => c.validate(),
            Structure::Representation(r) => r.validate(),
        }
    }
}

/// A parsed file.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub structure: Structure,
    pub rota_baxter: Option<LinearEndo>,
    pub o_operator: Option<Matrix>,
    pub cochains: Vec<CochainSpec>,
    pub deformation: Vec<CochainSpec>,
    pub basis_names: Option<Vec<String>>,
}

impl Loaded {
    pub fn field(&self) -> Field {
        self.structure.field()
    }

    pub fn cochain(
        &self,
        spec: &CochainSpec,
        flavor: Flavor,
        what: &str,
    ) -> Result<Cochain, CliError> {
        cochain_from_spec(spec, flavor, self.field(), self.structure.dim(), what)
    }
}

fn scalar(field: Field, c: &Coeff, ctx: &str) -> Result<Scalar, CliError> {
    match c {
        Coeff::Int(n) => Ok(field.int(*n)),
        Coeff::Text(s) => Scalar::parse_in(field, s).map_err(|e| CliError::parse(ctx, e)),
    }
}

pub fn scalar_text(x: &Scalar) -> String {
    match x {
        Scalar::Q(r) => r.to_string(),
        Scalar::Fp { value, .. } => value.to_string(),
    }
}

fn coeff_of(x: &Scalar) -> Coeff {
    Coeff::Text(scalar_text(x))
}

fn index(i: usize, bound: usize, ctx: &str, name: &str) -> Result<usize, CliError> {
    if i == 0 || i > bound {
        return Err(CliError::parse(
            ctx,
            format!("index {name}={i} out of range 1..={bound}"),
        ));
    }
    Ok(i - 1)
}

fn matrix(
    field: Field,
    rows: &[Vec<Coeff>],
    shape: (usize, usize),
    ctx: &str,
) -> Result<Matrix, CliError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(CliError::parse(
            ctx,
            format!("expected a {}x{} matrix", shape.0, shape.1),
        ));
    }
    let mut m = Matrix::zeros(field, shape.0, shape.1);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            m[(r, c)] = scalar(field, x, &format!("{ctx}[{}][{}]", r + 1, c + 1))?;
        }
    }
    Ok(m)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Coeff>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(coeff_of).collect())
        .collect()
}

/// Sums repeated entries.
fn product(
    field: Field,
    entries: &[Entry],
    dims: [usize; 3],
    name: &str,
) -> Result<Tensor3, CliError> {
    let mut t = Tensor3::zeros(field, dims);
    for (n, e) in entries.iter().enumerate() {
        let ctx = format!("{name}[{}]", n + 1);
        let i = index(e.i, dims[0], &ctx, "i")?;
        let j = index(e.j, dims[1], &ctx, "j")?;
        let k = index(e.k, dims[2], &ctx, "k")?;
        let x = scalar(field, &e.coeff, &ctx)?;
        let sum = t.get(i, j, k) + &x;
        t.set(i, j, k, sum);
    }
    Ok(t)
}

fn coproduct(field: Field, entries: &[CoEntry], d: usize, name: &str) -> Result<Tensor3, CliError> {
    let mut t = Tensor3::zeros(field, [d, d, d]);
    for (n, e) in entries.iter().enumerate() {
        let ctx = format!("{name}[{}]", n + 1);
        let k = index(e.k, d, &ctx, "k")?;
        let i = index(e.i, d, &ctx, "i")?;
        let j = index(e.j, d, &ctx, "j")?;
        let x = scalar(field, &e.coeff, &ctx)?;
        let sum = t.get(k, i, j) + &x;
        t.set(k, i, j, sum);
    }
    Ok(t)
}

fn entries_of(t: &Tensor3) -> Vec<Entry> {
    t.nonzero()
        .into_iter()
        .map(|([i, j, k], x)| Entry {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            coeff: coeff_of(x),
        })
        .collect()
}

fn co_entries_of(t: &Tensor3) -> Vec<CoEntry> {
    t.nonzero()
        .into_iter()
        .map(|([k, i, j], x)| CoEntry {
            k: k + 1,
            i: i + 1,
            j: j + 1,
            coeff: coeff_of(x),
        })
        .collect()
}

fn cochain_from_spec(
    spec: &CochainSpec,
    flavor: Flavor,
    field: Field,
    d: usize,
    what: &str,
) -> Result<Cochain, CliError> {
    let n = spec.degree;
    if n == 0 {
        return Err(CliError::parse(what, "degree must be at least 1"));
    }
    let mut c = Cochain::zeros(flavor, field, d, n);
    let labels = flavor.labels(n);
    let (n_in, n_out) = if flavor.is_co() { (1, n) } else { (n, 1) };
    for (m, e) in spec.entries.iter().enumerate() {
        let ctx = format!("{what}.entries[{}]", m + 1);
        let label = index(e.label, labels, &ctx, "label")?;
        if e.inputs.len() != n_in || e.outputs.len() != n_out {
            return Err(CliError::parse(
                &ctx,
                format!("expected {n_in} input(s) and {n_out} output(s) in degree {n}"),
            ));
        }
        let ins = e
            .inputs
            .iter()
            .map(|&i| index(i, d, &ctx, "input"))
            .collect::<Result<Vec<_>, _>>()?;
        let outs = e
            .outputs
            .iter()
            .map(|&i| index(i, d, &ctx, "output"))
            .collect::<Result<Vec<_>, _>>()?;
        let (args, single) = if flavor.is_co() {
            (outs, ins[0])
        } else {
            (ins, outs[0])
        };
        let x = scalar(field, &e.coeff, &ctx)?;
        let sum = c.get(label, &args, single) + &x;
        c.set(label, &args, single, sum);
    }
    Ok(c)
}

/// Nonzero coefficients, in storage order.
pub fn cochain_spec(c: &Cochain, name: Option<String>) -> CochainSpec {
    let (d, n) = (c.dim(), c.degree());
    let mut entries = Vec::new();
    for label in 0..c.labels() {
        for multi in 0..d.pow(n as u32) {
            let mut args = vec![0; n];
            let mut rest = multi;
            for s in (0..n).rev() {
                args[s] = rest % d;
                rest /= d;
            }
            for single in 0..d {
                let x = c.get(label, &args, single);
                if x.is_zero() {
                    continue;
                }
                let many: Vec<usize> = args.iter().map(|a| a + 1).collect();
                let (inputs, outputs) = if c.flavor().is_co() {
                    (vec![single + 1], many)
                } else {
                    (many, vec![single + 1])
                };
                entries.push(CochainEntry {
                    label: label + 1,
                    inputs,
                    outputs,
                    coeff: coeff_of(x),
                });
            }
        }
    }
    entries.sort_by(|a, b| (a.label, &a.inputs, &a.outputs).cmp(&(b.label, &b.inputs, &b.outputs)));
    CochainSpec {
        name,
        degree: n,
        entries,
    }
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<StructureFile, CliError> {
        let file: StructureFile = serde_json::from_str(text)
            .map_err(|e| CliError::parse(format!("line {} column {}", e.line(), e.column()), e))?;
        if file.schema != SCHEMA {
            return Err(CliError::parse(
                "schema",
                format!("unsupported schema {}", file.schema),
            ));
        }
        Ok(file)
    }

    fn parsed_field(&self) -> Result<Field, CliError> {
        self.field.parse().map_err(|e| CliError::parse("field", e))
    }

    /// Builds the in-memory structures without running validators.
    pub fn load(&self) -> Result<Loaded, CliError> {
        let field = self.parsed_field()?;
        let d = self.dim;
        if d == 0 {
            return Err(CliError::parse("dim", "dimension must be positive"));
        }
        if let Some(names) = &self.basis_names {
            if names.len() != d {
                return Err(CliError::parse(
                    "basis_names",
                    format!("expected {d} names"),
                ));
            }
        }
        let alpha = match &self.alpha {
            Some(rows) => matrix(field, rows, (d, d), "alpha")?,
            None => Matrix::identity(field, d),
        };
        let space = HomVectorSpace::new(alpha).map_err(|e| CliError::parse("alpha", e))?;
        let cube = [d, d, d];
        let unexpected = |name: &str, present: bool| -> Result<(), CliError> {
            if present {
                Err(CliError::parse(
                    name,
                    format!("not allowed for kind {:?}", self.kind),
                ))
            } else {
                Ok(())
            }
        };
        let algebra_fields = !self.mu.is_empty() || !self.prec.is_empty() || !self.succ.is_empty();
        let coalgebra_fields =
            !self.codelta.is_empty() || !self.coprec.is_empty() || !self.cosucc.is_empty();
        let structure = match self.kind {
            Kind::HomAssoc | Kind::Representation => {
                unexpected("prec/succ", !self.prec.is_empty() || !self.succ.is_empty())?;
                unexpected("codelta/coprec/cosucc", coalgebra_fields)?;
                let a = HomAssocAlgebra::new(space, product(field, &self.mu, cube, "mu")?)?;
                if self.kind == Kind::HomAssoc {
                    unexpected("module", self.module.is_some())?;
                    Structure::Assoc(a)
                } else {
                    let m = self.module.as_ref().ok_or_else(|| {
                        CliError::parse("module", "representation needs a module")
                    })?;
                    let dm = m.dim;
                    let beta = match &m.beta {
                        Some(rows) => matrix(field, rows, (dm, dm), "module.beta")?,
                        None => Matrix::identity(field, dm),
                    };
                    let mspace =
                        HomVectorSpace::new(beta).map_err(|e| CliError::parse("module.beta", e))?;
                    let left = product(field, &m.left, [d, dm, dm], "module.left")?;
                    let right = product(field, &m.right, [dm, d, dm], "module.right")?;
                    Structure::Representation(HomRepresentation::new(a, mspace, left, right)?)
                }
            }
            Kind::HomDend => {
                unexpected("mu", !self.mu.is_empty())?;
                unexpected("codelta/coprec/cosucc", coalgebra_fields)?;
                Structure::Dend(HomDendAlgebra::new(
                    space,
                    product(field, &self.prec, cube, "prec")?,
                    product(field, &self.succ, cube, "succ")?,
                )?)
            }
            Kind::HomDendCoalg => {
                unexpected("mu/prec/succ", algebra_fields)?;
                unexpected("codelta", !self.codelta.is_empty())?;
                Structure::DendCoalg(HomDendCoalgebra::new(
                    space,
                    coproduct(field, &self.coprec, d, "coprec")?,
                    coproduct(field, &self.cosucc, d, "cosucc")?,
                )?)
            }
            Kind::HomAssocCoalg => {
                unexpected("mu/prec/succ", algebra_fields)?;
                unexpected(
                    "coprec/cosucc",
                    !self.coprec.is_empty() || !self.cosucc.is_empty(),
                )?;
                Structure::AssocCoalg(HomAssocCoalgebra::new(
                    space,
                    coproduct(field, &self.codelta, d, "codelta")?,
                )?)
            }
        };
        if self.kind != Kind::Representation {
            unexpected("module", self.module.is_some())?;
        }
        let rota_baxter = match &self.rota_baxter {
            Some(rows) => {
                if self.kind != Kind::HomAssoc {
                    return Err(CliError::parse(
                        "rota_baxter",
                        "only allowed for kind hom-assoc",
                    ));
                }
                let m = matrix(field, rows, (d, d), "rota_baxter")?;
                Some(LinearEndo::new(m).map_err(|e| CliError::parse("rota_baxter", e))?)
            }
            None => None,
        };
        let o_operator = match (&self.o_operator, &structure) {
            (Some(rows), Structure::Representation(r)) => {
                Some(matrix(field, rows, (d, r.module().dim()), "o_operator")?)
            }
            (Some(_), _) => {
                return Err(CliError::parse(
                    "o_operator",
                    "only allowed for kind representation",
                ))
            }
            (None, _) => None,
        };
        let mut loaded = Loaded {
            structure,
            rota_baxter,
            o_operator,
            cochains: self.cochains.clone(),
            deformation: self.deformation.clone(),
            basis_names: self.basis_names.clone(),
        };
        if let Some(flavor) = loaded.structure.natural_flavor() {
            let field = loaded.field();
            let d = loaded.structure.dim();
            let normalize = |specs: &[CochainSpec],
                             what: &str|
             -> Result<Vec<CochainSpec>, CliError> {
                specs
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        let c =
                            cochain_from_spec(s, flavor, field, d, &format!("{what}[{}]", k + 1))?;
                        Ok(cochain_spec(&c, s.name.clone()))
                    })
                    .collect()
            };
            loaded.cochains = normalize(&loaded.cochains, "cochains")?;
            loaded.deformation = normalize(&loaded.deformation, "deformation")?;
        } else if !loaded.cochains.is_empty() || !loaded.deformation.is_empty() {
            return Err(CliError::parse(
                "cochains",
                "representations carry no cochains",
            ));
        }
        Ok(loaded)
    }

    fn blank(field: Field, kind: Kind, dim: usize, alpha: &Matrix) -> StructureFile {
        StructureFile {
            schema: SCHEMA,
            field: field.to_string(),
            kind,
            dim,
            basis_names: None,
            alpha: Some(matrix_rows(alpha)),
            mu: Vec::new(),
            prec: Vec::new(),
            succ: Vec::new(),
            codelta: Vec::new(),
            coprec: Vec::new(),
            cosucc: Vec::new(),
            module: None,
            rota_baxter: None,
            o_operator: None,
            cochains: Vec::new(),
            deformation: Vec::new(),
        }
    }

    /// The file describing `s` (no operators or cochains attached).
    pub fn from_structure(s: &Structure) -> StructureFile {
        match s {
            Structure::Assoc(a) => StructureFile {
                mu: entries_of(a.mu()),
                ..Self::blank(a.field(), Kind::HomAssoc, a.dim(), a.alpha())
            },
            Structure::Dend(a) => StructureFile {
                prec: entries_of(a.left()),
                succ: entries_of(a.right()),
                ..Self::blank(a.field(), Kind::HomDend, a.dim(), a.alpha())
            },
            Structure::DendCoalg(c) => StructureFile {
                coprec: co_entries_of(c.coleft()),
                cosucc: co_entries_of(c.coright()),
                ..Self::blank(c.field(), Kind::HomDendCoalg, c.dim(), c.alpha())
            },
            Structure::AssocCoalg(c) => StructureFile {
                codelta: co_entries_of(c.delta()),
                ..Self::blank(c.field(), Kind::HomAssocCoalg, c.dim(), c.alpha())
            },
            Structure::Representation(r) => {
                let a = r.base();
                StructureFile {
                    mu: entries_of(a.mu()),
                    module: Some(ModuleSpec {
                        dim: r.module().dim(),
                        beta: Some(matrix_rows(r.module().alpha())),
                        left: entries_of(r.mul_left()),
                        right: entries_of(r.mul_right()),
                    }),
                    ..Self::blank(a.field(), Kind::Representation, a.dim(), a.alpha())
                }
            }
        }
    }

    /// Full round-trip form of a loaded file.
    pub fn from_loaded(l: &Loaded) -> StructureFile {
        let mut f = Self::from_structure(&l.structure);
        f.basis_names = l.basis_names.clone();
        f.rota_baxter = l.rota_baxter.as_ref().map(|r| matrix_rows(r.matrix()));
        f.o_operator = l.o_operator.as_ref().map(matrix_rows);
        f.cochains = l.cochains.clone();
        f.deformation = l.deformation.clone();
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn violations_json(r: &ValidationReport) -> Value {
    Value::Array(
        r.violations
            .iter()
            .map(|v| {
                json!({
                    "identity": v.identity,
                    "basis": v.basis.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "lhs": v.lhs.iter().map(scalar_text).collect::<Vec<_>>(),
                    "rhs": v.rhs.iter().map(scalar_text).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| json!(scalar_text(x))).collect()))
            .collect(),
    )
}

pub fn tensor_json(t: &Tensor3) -> Value {
    serde_json::to_value(entries_of(t)).expect("plain data")
}

pub fn cochain_json(c: &Cochain) -> Value {
    serde_json::to_value(cochain_spec(c, None)).expect("plain data")
}
