//! JSON encodings of the core types.
//!
//! Scalars are strings (`"3/4"` over ℚ, decimal residues over `F_p`); plain
//! integers are accepted on input. Polynomials are strings in the canonical
//! printed form. A missing `field` falls back to the command line default.

use loopspace_core::bridge::CommutingTuple;
use loopspace_core::diagrams::{DiagMorphism, Diagram};
use loopspace_core::homotopy::{ChainComplex, DiagramHost, ModuleHost};
use loopspace_core::polymods::{ModMorphism, ModulePresentation};
use loopspace_core::smallcat::FinPresCat;
use loopspace_core::{Field, Matrix, MonomialOrder, Poly, PolyMatrix, PolyRing, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{schema, CliError};

type Res<T> = Result<T, CliError>;

/// Defaults applied to inputs that leave out their field or order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub field: Field,
    pub order: MonomialOrder,
}

impl Default for Context {
    fn default() -> Self {
        Context { field: Field::Prime(101), order: MonomialOrder::DegRevLex }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime { p: u64 },
}

impl FieldJson {
    pub fn decode(&self) -> Res<Field> {
        match self {
            FieldJson::Prime { p } => Ok(Field::prime(*p)?),
            FieldJson::Named(s) => parse_field(s),
        }
    }

    pub fn encode(f: Field) -> FieldJson {
        match f {
            Field::Rationals => FieldJson::Named("Q".into()),
            Field::Prime(p) => FieldJson::Prime { p },
        }
    }
}

/// `Q`, `p`, or `F_p`.
pub fn parse_field(s: &str) -> Res<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let digits = t.strip_prefix("F_").unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| schema(format!("unknown field {s:?}; expected Q or a prime")))?;
    Ok(Field::prime(p)?)
}

pub fn parse_order(s: &str) -> Res<MonomialOrder> {
    match s.to_ascii_lowercase().as_str() {
        "lex" => Ok(MonomialOrder::Lex),
        "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
        _ => Err(schema(format!("unknown monomial order {s:?}; expected lex or degrevlex"))),
    }
}

pub fn order_name(o: MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::Lex => "lex",
        MonomialOrder::DegRevLex => "degrevlex",
    }
}

/// A scalar or polynomial entry: a string, or an integer for convenience.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Atom {
    Int(i64),
    Str(String),
}

impl Atom {
    fn text(&self) -> String {
        match self {
            Atom::Int(n) => n.to_string(),
            Atom::Str(s) => s.clone(),
        }
    }

    pub fn scalar(&self, field: Field) -> Res<Scalar> {
        match self {
            Atom::Int(n) => Ok(field.from_i64(*n)),
            Atom::Str(s) => Ok(field.parse_scalar(s)?),
        }
    }

    pub fn poly(&self, ring: PolyRing) -> Res<Poly> {
        Ok(Poly::parse(ring, &self.text())?)
    }
}

pub type MatrixJson = Vec<Vec<Atom>>;

pub fn decode_matrix(field: Field, rows: usize, cols: usize, m: &MatrixJson) -> Res<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(schema(format!("expected a {rows}x{cols} matrix")));
    }
    let data = m.iter().flatten().map(|a| a.scalar(field)).collect::<Res<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, rows, cols, data)?)
}

/// Matrix of unknown shape; every row must have the same length.
pub fn decode_matrix_any(field: Field, m: &MatrixJson) -> Res<Matrix> {
    let cols = m.first().map_or(0, Vec::len);
    decode_matrix(field, m.len(), cols, m)
}

pub fn encode_matrix(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.to_string()).collect()).collect();
    json!(rows)
}

pub fn decode_poly_matrix(ring: PolyRing, rows: usize, m: &MatrixJson) -> Res<PolyMatrix> {
    if m.len() != rows {
        return Err(schema(format!("expected {rows} rows, found {}", m.len())));
    }
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(schema("ragged polynomial matrix"));
    }
    let data = m.iter().flatten().map(|a| a.poly(ring)).collect::<Res<Vec<_>>>()?;
    Ok(PolyMatrix::from_rows(ring, rows, cols, data)?)
}

pub fn encode_poly_matrix(m: &PolyMatrix) -> Value {
    let rows: Vec<Vec<String>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    json!(rows)
}

pub fn encode_polys(ps: &[Poly]) -> Value {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub n: usize,
    pub dim: usize,
    pub mats: Vec<MatrixJson>,
}

impl TupleJson {
    pub fn decode(&self, ctx: &Context) -> Res<CommutingTuple> {
        let field = match &self.field {
            Some(f) => f.decode()?,
            None => ctx.field,
        };
        if self.mats.len() != self.n {
            return Err(schema(format!("n = {} but {} matrices given", self.n, self.mats.len())));
        }
        let mats = self.mats.iter().map(|m| decode_matrix(field, self.dim, self.dim, m)).collect::<Res<Vec<_>>>()?;
        Ok(CommutingTuple::new(field, self.dim, mats)?)
    }
}

pub fn encode_tuple(x: &CommutingTuple) -> Value {
    json!({
        "field": FieldJson::encode(x.field()),
        "n": x.n(),
        "dim": x.dim(),
        "mats": x.mats().iter().map(encode_matrix).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub gens: usize,
    /// `gens` rows, one column per relation.
    pub rels: MatrixJson,
}

impl PresentationJson {
    pub fn ring(&self, ctx: &Context) -> Res<PolyRing> {
        let field = match &self.field {
            Some(f) => f.decode()?,
            None => ctx.field,
        };
        let order = match &self.order {
            Some(o) => parse_order(o)?,
            None => ctx.order,
        };
        Ok(PolyRing::new(field, self.nvars, order))
    }

    pub fn decode(&self, ctx: &Context) -> Res<ModulePresentation> {
        let ring = self.ring(ctx)?;
        let rels = if self.gens == 0 && self.rels.is_empty() {
            PolyMatrix::zeros(ring, 0, 0)
        } else {
            decode_poly_matrix(ring, self.gens, &self.rels)?
        };
        Ok(ModulePresentation::new(self.gens, rels)?)
    }
}

pub fn encode_presentation(m: &ModulePresentation) -> Value {
    let ring = m.ring();
    json!({
        "field": FieldJson::encode(ring.field),
        "nvars": ring.nvars,
        "order": order_name(ring.order),
        "gens": m.gens(),
        "rels": encode_poly_matrix(m.rels()),
    })
}

/// A tuple or a presentation, told apart by the `mats` and `rels` keys.
#[derive(Debug, Clone)]
pub enum Object {
    Tuple(CommutingTuple),
    Module(ModulePresentation),
}

pub fn decode_object(v: &Value, ctx: &Context) -> Res<Object> {
    let map = v.as_object().ok_or_else(|| schema("expected a JSON object"))?;
    if map.contains_key("mats") {
        let t: TupleJson = serde_json::from_value(v.clone())?;
        Ok(Object::Tuple(t.decode(ctx)?))
    } else if map.contains_key("rels") {
        let p: PresentationJson = serde_json::from_value(v.clone())?;
        Ok(Object::Module(p.decode(ctx)?))
    } else {
        Err(schema("expected a commuting tuple (with \"mats\") or a presentation (with \"rels\")"))
    }
}

pub fn encode_object(o: &Object) -> Value {
    match o {
        Object::Tuple(x) => encode_tuple(x),
        Object::Module(m) => encode_presentation(m),
    }
}

/// `{"left": ..., "right": ...}`.
pub fn decode_pair(v: &Value, ctx: &Context) -> Res<(Object, Object)> {
    let get = |k: &str| v.get(k).ok_or_else(|| schema(format!("pair input needs a {k:?} entry")));
    Ok((decode_object(get("left")?, ctx)?, decode_object(get("right")?, ctx)?))
}

pub fn decode_tuple_pair(v: &Value, ctx: &Context) -> Res<(CommutingTuple, CommutingTuple)> {
    match decode_pair(v, ctx)? {
        (Object::Tuple(a), Object::Tuple(b)) => Ok((a, b)),
        _ => Err(schema("expected a pair of commuting tuples")),
    }
}

pub fn decode_tuple(v: &Value, ctx: &Context) -> Res<CommutingTuple> {
    match decode_object(v, ctx)? {
        Object::Tuple(x) => Ok(x),
        Object::Module(_) => Err(schema("expected a commuting tuple")),
    }
}

/// A bounded complex, `diffs[k]: objects[k+1] → objects[k]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    /// `loops` (diagrams over the loop category) or `modules`.
    pub host: String,
    /// Number of commuting loops or of variables; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub support: [i64; 2],
    pub objects: Vec<Value>,
    pub diffs: Vec<MatrixJson>,
}

#[derive(Debug, Clone)]
pub enum Complex {
    Loops(ChainComplex<DiagramHost>),
    Modules(ChainComplex<ModuleHost>),
}

impl ComplexJson {
    fn check_support(&self) -> Res<()> {
        let [lo, hi] = self.support;
        if hi - lo + 1 != self.objects.len() as i64 {
            return Err(schema(format!("support [{lo}, {hi}] does not match {} objects", self.objects.len())));
        }
        if self.diffs.len() != self.objects.len().saturating_sub(1) {
            return Err(schema(format!("{} differentials for {} objects", self.diffs.len(), self.objects.len())));
        }
        Ok(())
    }

    pub fn decode(&self, ctx: &Context) -> Res<Complex> {
        self.check_support()?;
        let field = match &self.field {
            Some(f) => f.decode()?,
            None => ctx.field,
        };
        let inner = Context { field, order: ctx.order };
        let n = self.n.unwrap_or(1);
        match self.host.as_str() {
            "loops" => {
                let shape = FinPresCat::make_loop(n)?;
                let host = DiagramHost::new(shape, field);
                let objects = self
                    .objects
                    .iter()
                    .map(|o| {
                        let x = decode_tuple(o, &inner)?;
                        if x.n() != n || x.field() != field {
                            return Err(schema("complex objects must share the field and number of loops"));
                        }
                        Ok(x.to_diagram())
                    })
                    .collect::<Res<Vec<Diagram>>>()?;
                let diffs = self
                    .diffs
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let (src, dst) = (&objects[k + 1], &objects[k]);
                        let mat = decode_matrix(field, dst.total_dim(), src.total_dim(), m)?;
                        Ok(DiagMorphism::new(src.clone(), dst.clone(), vec![mat])?)
                    })
                    .collect::<Res<Vec<_>>>()?;
                Ok(Complex::Loops(ChainComplex::new(host, self.support[0], objects, diffs)?))
            }
            "modules" => {
                let order = match &self.order {
                    Some(o) => parse_order(o)?,
                    None => ctx.order,
                };
                let ring = PolyRing::new(field, n, order);
                let inner = Context { field, order };
                let objects = self
                    .objects
                    .iter()
                    .map(|o| match decode_object(o, &inner)? {
                        Object::Module(m) if *m.ring() == ring => Ok(m),
                        _ => Err(schema("complex objects must be presentations over the complex's ring")),
                    })
                    .collect::<Res<Vec<_>>>()?;
                let diffs = self
                    .diffs
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let (src, dst) = (&objects[k + 1], &objects[k]);
                        let mat = if dst.gens() == 0 {
                            PolyMatrix::zeros(ring, 0, src.gens())
                        } else {
                            decode_poly_matrix(ring, dst.gens(), m)?
                        };
                        Ok(ModMorphism::new(src.clone(), dst.clone(), mat)?)
                    })
                    .collect::<Res<Vec<_>>>()?;
                Ok(Complex::Modules(ChainComplex::new(ModuleHost::new(ring), self.support[0], objects, diffs)?))
            }
            other => Err(schema(format!("unknown complex host {other:?}; expected loops or modules"))),
        }
    }
}

pub fn decode_complex(v: &Value, ctx: &Context) -> Res<Complex> {
    let c: ComplexJson = serde_json::from_value(v.clone())?;
    c.decode(ctx)
}

pub fn encode_loop_complex(c: &ChainComplex<DiagramHost>) -> Value {
    let field = c.host().field;
    let objects: Vec<Value> = c
        .objects()
        .iter()
        .map(|x| encode_tuple(&CommutingTuple::from_diagram(x).expect("loop diagram")))
        .collect();
    let diffs: Vec<Value> = c.diffs().iter().map(|d| encode_matrix(&d.comps()[0])).collect();
    json!({
        "field": FieldJson::encode(field),
        "host": "loops",
        "n": c.host().shape.loop_rank().unwrap_or(1),
        "support": [c.lo(), c.hi()],
        "objects": objects,
        "diffs": diffs,
    })
}

pub fn encode_diagram_morphism(f: &DiagMorphism) -> Value {
    json!(f.comps().iter().map(encode_matrix).collect::<Vec<_>>())
}

/// `{"field", "matrix"}` for Smith normal form input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnfJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub matrix: MatrixJson,
}

impl SnfJson {
    pub fn decode(&self, ctx: &Context) -> Res<PolyMatrix> {
        let field = match &self.field {
            Some(f) => f.decode()?,
            None => ctx.field,
        };
        decode_poly_matrix(PolyRing::univariate(field), self.matrix.len(), &self.matrix)
    }
}

/// `{"field", "nvars", "order", "polys"}` for Gröbner basis input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub polys: Vec<Atom>,
}

impl IdealJson {
    pub fn decode(&self, ctx: &Context) -> Res<(PolyRing, Vec<Poly>)> {
        let field = match &self.field {
            Some(f) => f.decode()?,
            None => ctx.field,
        };
        let order = match &self.order {
            Some(o) => parse_order(o)?,
            None => ctx.order,
        };
        let ring = PolyRing::new(field, self.nvars, order);
        let polys = self.polys.iter().map(|a| a.poly(ring)).collect::<Res<Vec<_>>>()?;
        Ok((ring, polys))
    }
}

pub fn encode_ideal(ring: &PolyRing, polys: &[Poly]) -> Value {
    json!({
        "field": FieldJson::encode(ring.field),
        "nvars": ring.nvars,
        "order": order_name(ring.order),
        "polys": encode_polys(polys),
    })
}

pub fn encode_snf_input(m: &PolyMatrix) -> Value {
    json!({ "field": FieldJson::encode(m.ring().field), "matrix": encode_poly_matrix(m) })
}
