//! Energy densities `h(ξ, η)` and `g(ξ)`.
//!
//! Two concrete representations share the [`Density`] trait: analytic
//! [`Supremand`]s built from closures (the catalog, user expressions, hulls,
//! extensions) and finite [`GridSupremand`] tables over a jump alphabet.
//! Whenever an argument is exactly zero an analytic supremand on the
//! punctured plane returns its zero convention, by default the declared
//! infimum.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::conditions::{CheckReport, ViolationWitness, WitnessKind};
use crate::expr::{Expr, Var};
use crate::{Error, ExtReal, Result};

/// Where an analytic supremand is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Every pair, axes included, is passed to the kernel.
    FullPlane,
    /// `(ℝ∖{0})²`; pairs on an axis get the zero convention.
    PuncturedPlane,
    /// `ℝ⁺ × ℝ⁺`; off-quadrant pairs are outside the domain.
    PositiveQuadrant,
}

/// Common evaluation surface for analytic and tabulated densities.
pub trait Density: Send + Sync {
    fn name(&self) -> String;

    fn eval(&self, x: f64, y: f64) -> Result<ExtReal>;

    /// The value `inf h`, used for functions without jumps.
    fn declared_infimum(&self) -> ExtReal;

    /// Comparison tolerance the checkers use unless told otherwise.
    fn default_tol(&self) -> f64;

    /// The finite alphabet for tabulated densities.
    fn alphabet(&self) -> Option<&[f64]> {
        None
    }
}

type Kernel = Arc<dyn Fn(f64, f64) -> Result<ExtReal> + Send + Sync>;

/// An analytic supremand.
#[derive(Clone)]
pub struct Supremand {
    name: String,
    domain: Domain,
    zero_convention: ExtReal,
    declared_infimum: ExtReal,
    kernel: Kernel,
}

impl fmt::Debug for Supremand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Supremand")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("zero_convention", &self.zero_convention)
            .field("declared_infimum", &self.declared_infimum)
            .finish()
    }
}

fn finite_or_nan(x: f64, y: f64, v: f64) -> Result<ExtReal> {
    ExtReal::from_f64(v).ok_or(Error::NotANumber { x, y })
}

/// `|sin x| / x`, with the value at multiples of π taken directly.
pub fn sin_ratio(x: f64) -> f64 {
    x.sin().abs() / x
}

impl Supremand {
    /// A supremand on `domain` whose zero convention is its declared infimum.
    pub fn new<F>(name: impl Into<String>, domain: Domain, declared_infimum: ExtReal, f: F) -> Self
    where
        F: Fn(f64, f64) -> Result<ExtReal> + Send + Sync + 'static,
    {
        Supremand {
            name: name.into(),
            domain,
            zero_convention: declared_infimum,
            declared_infimum,
            kernel: Arc::new(f),
        }
    }

    /// Convenience for real-valued kernels; `±inf` become sentinels.
    pub fn from_fn<F>(
        name: impl Into<String>,
        domain: Domain,
        declared_infimum: ExtReal,
        f: F,
    ) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, domain, declared_infimum, move |x, y| {
            finite_or_nan(x, y, f(x, y))
        })
    }

    pub fn with_zero_convention(mut self, value: ExtReal) -> Self {
        self.zero_convention = value;
        self
    }

    pub fn constant(c: ExtReal) -> Self {
        Self::new(
            format!("constant:{c}"),
            Domain::PuncturedPlane,
            c,
            move |_, _| Ok(c),
        )
    }

    /// A user expression in `x` and `y` on the punctured plane.
    pub fn from_expression(expr: Expr, declared_infimum: ExtReal) -> Self {
        let name = format!("user-expression:{expr}");
        Self::new(
            name,
            Domain::PuncturedPlane,
            declared_infimum,
            move |x, y| finite_or_nan(x, y, expr.eval(x, y)?),
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn zero_convention(&self) -> ExtReal {
        self.zero_convention
    }

    /// The symmetric-diagonal hull
    /// `ĥ(ξ, η) = max{h(ξ, ξ), h(η, η), h(η, ξ), h(ξ, η)}`.
    pub fn hull(&self) -> Supremand {
        let inner = self.clone();
        Supremand {
            name: format!("hull({})", self.name),
            domain: self.domain,
            zero_convention: self.zero_convention,
            declared_infimum: self.declared_infimum,
            kernel: Arc::new(move |x, y| {
                let vals = [
                    inner.eval(x, x)?,
                    inner.eval(y, y)?,
                    inner.eval(y, x)?,
                    inner.eval(x, y)?,
                ];
                Ok(vals.into_iter().max().unwrap())
            }),
        }
    }

    /// `f ∘ h` for a strictly increasing `f`; sentinels are left in place.
    pub fn compose_increasing<F>(&self, label: &str, f: F) -> Supremand
    where
        F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
    {
        let inner = self.clone();
        let g = f.clone();
        Supremand {
            name: format!("{label}({})", self.name),
            domain: self.domain,
            zero_convention: self.zero_convention.map_finite(&f),
            declared_infimum: self.declared_infimum.map_finite(&f),
            kernel: Arc::new(move |x, y| Ok(inner.eval(x, y)?.map_finite(&g))),
        }
    }
}

impl Density for Supremand {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn eval(&self, x: f64, y: f64) -> Result<ExtReal> {
        if x.is_nan() || y.is_nan() {
            return Err(Error::NotANumber { x, y });
        }
        match self.domain {
            Domain::FullPlane => {}
            Domain::PuncturedPlane => {
                if x == 0.0 || y == 0.0 {
                    return Ok(self.zero_convention);
                }
            }
            Domain::PositiveQuadrant => {
                if x == 0.0 || y == 0.0 {
                    return Ok(self.zero_convention);
                }
                if x < 0.0 || y < 0.0 {
                    return Err(Error::OutOfDomain {
                        name: self.name.clone(),
                        x,
                        y,
                    });
                }
            }
        }
        (self.kernel)(x, y)
    }

    fn declared_infimum(&self) -> ExtReal {
        self.declared_infimum
    }

    fn default_tol(&self) -> f64 {
        1e-12
    }
}

/// How the off-quadrant value of the `h̃` extension is obtained.
#[derive(Debug, Clone)]
pub enum SupremumSource {
    Given(ExtReal),
    /// Maximum of `h` over all pairs of these points lying in `ℝ⁺ × ℝ⁺`.
    Probe(Vec<f64>),
}

/// `h̃ = h` on `ℝ⁺ × ℝ⁺` and `sup h` elsewhere.
pub fn extend_positive_tilde(h: &Supremand, sup: SupremumSource) -> Result<Supremand> {
    let m = match sup {
        SupremumSource::Given(m) => m,
        SupremumSource::Probe(points) => {
            let pos: Vec<f64> = points.into_iter().filter(|&p| p > 0.0).collect();
            let mut best: Option<ExtReal> = None;
            for &x in &pos {
                for &y in &pos {
                    if let Ok(v) = h.eval(x, y) {
                        best = Some(best.map_or(v, |b| b.max(v)));
                    }
                }
            }
            best.ok_or_else(|| {
                Error::InvalidParameter("supremum not determinable: no positive probe pair".into())
            })?
        }
    };
    if !m.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "supremum not determinable: got {m}"
        )));
    }
    let inner = h.clone();
    let inf = h.declared_infimum().min(m);
    Ok(Supremand::new(
        format!("tilde({})", h.name),
        Domain::FullPlane,
        inf,
        move |x, y| {
            if x > 0.0 && y > 0.0 {
                inner.eval(x, y)
            } else {
                Ok(m)
            }
        },
    ))
}

/// `h⋆ = h` on `ℝ⁺ × ℝ⁺`, `0` on the axes, `+∞` elsewhere.
pub fn extend_positive_star(h: &Supremand) -> Supremand {
    let inner = h.clone();
    let inf = h.declared_infimum().min(ExtReal::ZERO);
    Supremand::new(
        format!("star({})", h.name),
        Domain::FullPlane,
        inf,
        move |x, y| {
            if x > 0.0 && y > 0.0 {
                inner.eval(x, y)
            } else if x == 0.0 || y == 0.0 {
                Ok(ExtReal::ZERO)
            } else {
                Ok(ExtReal::Top)
            }
        },
    )
}

/// Names accepted by [`catalog`].
pub const CATALOG: &[&str] = &[
    "sin-ratio-sum",
    "sin-ratio-max",
    "sin-ratio-affine:<alpha>",
    "reciprocal-sum-star",
    "constant:<c>",
    "user-grid:<file>",
    "user-expression:<expr>",
];

fn positive_branches<F>(name: String, f: F) -> Supremand
where
    F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    Supremand::new(name, Domain::FullPlane, ExtReal::ZERO, move |w, y| {
        if w > 0.0 && y > 0.0 {
            finite_or_nan(w, y, f(w, y))
        } else if w == 0.0 || y == 0.0 {
            Ok(ExtReal::ZERO)
        } else {
            Ok(ExtReal::Top)
        }
    })
}

/// Analytic catalog entries.
///
/// `sin-ratio-sum` is `|sin(x+y)| / (x+y)` on the punctured plane, with
/// `x + y = 0` outside the domain. `sin-ratio-max` and
/// `sin-ratio-affine:α` carry the `0` branch on the axes and `+∞` off the
/// positive quadrant. `reciprocal-sum-star` is the `h⋆` extension of
/// `1/(w+y)`.
pub fn catalog(name: &str, param: Option<&str>) -> Result<Supremand> {
    let need_none = |s: Supremand| match param {
        None => Ok(s),
        Some(p) => Err(Error::InvalidParameter(format!(
            "`{name}` takes no parameter, got `{p}`"
        ))),
    };
    match name {
        "sin-ratio-sum" => need_none(
            // |sin s|/s -> -1 as s -> 0-, so inf over the punctured plane is -1
            Supremand::new(
                "sin-ratio-sum",
                Domain::PuncturedPlane,
                ExtReal::Finite(-1.0),
                |x, y| {
                    let s = x + y;
                    if s == 0.0 {
                        return Err(Error::OutOfDomain {
                            name: "sin-ratio-sum".into(),
                            x,
                            y,
                        });
                    }
                    finite_or_nan(x, y, sin_ratio(s))
                },
            ),
        ),
        "sin-ratio-max" => need_none(positive_branches("sin-ratio-max".into(), |w, y| {
            sin_ratio(w).max(sin_ratio(y))
        })),
        "sin-ratio-affine" => {
            let raw = param.ok_or_else(|| {
                Error::InvalidParameter("sin-ratio-affine needs a parameter alpha".into())
            })?;
            let alpha: f64 = raw
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad alpha `{raw}`")))?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )));
            }
            Ok(positive_branches(
                format!("sin-ratio-affine:{alpha}"),
                move |w, y| alpha * sin_ratio(w) + (1.0 - alpha) * sin_ratio(y),
            ))
        }
        "reciprocal-sum-star" => need_none({
            let base = Supremand::from_fn(
                "reciprocal-sum",
                Domain::PositiveQuadrant,
                ExtReal::ZERO,
                |w, y| 1.0 / (w + y),
            );
            let mut s = extend_positive_star(&base);
            s.name = "reciprocal-sum-star".into();
            s
        }),
        "constant" => {
            let raw =
                param.ok_or_else(|| Error::InvalidParameter("constant needs a value".into()))?;
            Ok(Supremand::constant(raw.parse()?))
        }
        other => Err(Error::UnknownSupremand(other.to_string())),
    }
}

/// A supremand tabulated on a finite alphabet of nonzero jumps.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSupremand {
    alphabet: Vec<f64>,
    table: Vec<ExtReal>,
    declared_infimum: ExtReal,
}

/// Relative tolerance used to match a computed jump against an alphabet
/// entry; jumps rebuilt from running sums can be off by a few ulps.
const ALPHABET_MATCH_RTOL: f64 = 1e-9;

impl GridSupremand {
    /// `rows[i][j] = h(alphabet[i], alphabet[j])`.
    pub fn new(alphabet: Vec<f64>, rows: Vec<Vec<ExtReal>>) -> Result<Self> {
        validate_alphabet(&alphabet)?;
        let n = alphabet.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!(
                "expected a {n}x{n} matrix for an alphabet of {n} entries"
            )));
        }
        let table: Vec<ExtReal> = rows.into_iter().flatten().collect();
        let declared_infimum = table.iter().copied().min().unwrap();
        Ok(GridSupremand {
            alphabet,
            table,
            declared_infimum,
        })
    }

    /// Tabulates any density on the given alphabet.
    pub fn tabulate(h: &dyn Density, alphabet: Vec<f64>) -> Result<Self> {
        let rows = alphabet
            .iter()
            .map(|&x| {
                alphabet
                    .iter()
                    .map(|&y| h.eval(x, y))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, rows)
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> ExtReal {
        self.table[i * self.size() + j]
    }

    pub fn rows(&self) -> Vec<Vec<ExtReal>> {
        self.table.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    /// Index of the alphabet entry matching `x`, exact match first.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        if let Some(i) = self.alphabet.iter().position(|&a| a == x) {
            return Some(i);
        }
        self.alphabet
            .iter()
            .enumerate()
            .filter(|(_, &a)| (a - x).abs() <= ALPHABET_MATCH_RTOL * a.abs().max(1.0))
            .min_by(|(_, a), (_, b)| (*a - x).abs().total_cmp(&(*b - x).abs()))
            .map(|(i, _)| i)
    }

    pub fn hull(&self) -> GridSupremand {
        let n = self.size();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let m = self
                    .entry(i, i)
                    .max(self.entry(j, j))
                    .max(self.entry(j, i))
                    .max(self.entry(i, j));
                table.push(m);
            }
        }
        GridSupremand {
            alphabet: self.alphabet.clone(),
            table,
            declared_infimum: self.declared_infimum,
        }
    }

    pub fn compose_increasing(&self, f: impl Fn(f64) -> f64) -> GridSupremand {
        GridSupremand {
            alphabet: self.alphabet.clone(),
            table: self.table.iter().map(|v| v.map_finite(&f)).collect(),
            declared_infimum: self.declared_infimum.map_finite(&f),
        }
    }
}

pub(crate) fn validate_alphabet(alphabet: &[f64]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidAlphabet("empty".into()));
    }
    if let Some(x) = alphabet.iter().find(|x| **x == 0.0 || !x.is_finite()) {
        return Err(Error::InvalidAlphabet(format!(
            "entries must be finite and nonzero, got {x}"
        )));
    }
    for (i, a) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(a) {
            return Err(Error::InvalidAlphabet(format!("duplicate entry {a}")));
        }
    }
    Ok(())
}

impl Density for GridSupremand {
    fn name(&self) -> String {
        let letters: Vec<String> = self.alphabet.iter().map(|a| a.to_string()).collect();
        format!("user-grid[{}]", letters.join(","))
    }

    fn eval(&self, x: f64, y: f64) -> Result<ExtReal> {
        if x == 0.0 || y == 0.0 {
            return Ok(self.declared_infimum);
        }
        let i = self.index_of(x).ok_or(Error::NotInAlphabet(x))?;
        let j = self.index_of(y).ok_or(Error::NotInAlphabet(y))?;
        Ok(self.entry(i, j))
    }

    fn declared_infimum(&self) -> ExtReal {
        self.declared_infimum
    }

    fn default_tol(&self) -> f64 {
        0.0
    }

    fn alphabet(&self) -> Option<&[f64]> {
        Some(&self.alphabet)
    }
}

impl fmt::Display for GridSupremand {
    /// First row the alphabet, then one row per alphabet entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.alphabet.iter().map(|a| a.to_string()).collect();
        writeln!(f, "{}", head.join(","))?;
        for row in self.table.chunks(self.size()) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for GridSupremand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            rows.push((idx + 1, line.split(',').map(str::trim).collect()));
        }
        let (&(head_line, ref head), body) = rows
            .split_first()
            .ok_or(Error::InvalidTable("missing alphabet row".into()))?;
        let alphabet = head
            .iter()
            .map(|t| parse_real(t))
            .collect::<Result<Vec<f64>>>()
            .map_err(|e| Error::Parse {
                line: head_line,
                msg: e.to_string(),
            })?;
        let matrix = body
            .iter()
            .map(|(line, cells)| {
                cells
                    .iter()
                    .map(|c| c.parse::<ExtReal>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Parse {
                        line: *line,
                        msg: e.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        GridSupremand::new(alphabet, matrix)
    }
}

/// Parses a real, accepting `pi` multiples such as `pi/2`, `3pi/8`, `-pi`.
///
/// `pi` expands to `3.141592653589793` (the nearest double to π).
pub fn parse_real(token: &str) -> Result<f64> {
    let t = token.trim();
    let bad = || Error::InvalidParameter(format!("not a number: `{t}`"));
    if let Some(pos) = t.find("pi") {
        let (coef, rest) = (&t[..pos], &t[pos + 2..]);
        let k = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
        };
        let d = match rest {
            "" => 1.0,
            r => r
                .strip_prefix('/')
                .ok_or_else(bad)?
                .parse::<f64>()
                .map_err(|_| bad())?,
        };
        return Ok(k * PI / d);
    }
    let v: f64 = t.parse().map_err(|_| bad())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Parses a comma-separated list of reals (see [`parse_real`]).
pub fn parse_real_list(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_real)
        .collect()
}

/// Either representation, as resolved from a `--supremand` spec.
#[derive(Debug, Clone)]
pub enum AnySupremand {
    Analytic(Supremand),
    Grid(GridSupremand),
}

impl AnySupremand {
    /// Resolves `<name>[:param]`. `user-grid:<file>` reads the table from
    /// disk; `user-expression:<expr>` needs `declared_infimum`.
    pub fn from_spec(spec: &str, declared_infimum: Option<ExtReal>) -> Result<Self> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (spec.trim(), None),
        };
        match name {
            "user-grid" => {
                let path = param
                    .ok_or_else(|| Error::InvalidParameter("user-grid needs a file path".into()))?;
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
                Ok(AnySupremand::Grid(text.parse()?))
            }
            "user-expression" => {
                let src = param.ok_or_else(|| {
                    Error::InvalidParameter("user-expression needs an expression".into())
                })?;
                let inf = declared_infimum.ok_or_else(|| {
                    Error::InvalidParameter(
                        "user-expression supremands must declare their infimum".into(),
                    )
                })?;
                Ok(AnySupremand::Analytic(Supremand::from_expression(
                    Expr::parse(src)?,
                    inf,
                )))
            }
            _ => Ok(AnySupremand::Analytic(catalog(name, param)?)),
        }
    }

    pub fn hull(&self) -> AnySupremand {
        match self {
            AnySupremand::Analytic(s) => AnySupremand::Analytic(s.hull()),
            AnySupremand::Grid(g) => AnySupremand::Grid(g.hull()),
        }
    }

    pub fn as_density(&self) -> &dyn Density {
        match self {
            AnySupremand::Analytic(s) => s,
            AnySupremand::Grid(g) => g,
        }
    }
}

impl Density for AnySupremand {
    fn name(&self) -> String {
        self.as_density().name()
    }

    fn eval(&self, x: f64, y: f64) -> Result<ExtReal> {
        self.as_density().eval(x, y)
    }

    fn declared_infimum(&self) -> ExtReal {
        self.as_density().declared_infimum()
    }

    fn default_tol(&self) -> f64 {
        self.as_density().default_tol()
    }

    fn alphabet(&self) -> Option<&[f64]> {
        match self {
            AnySupremand::Analytic(_) => None,
            AnySupremand::Grid(g) => Some(&g.alphabet),
        }
    }
}

type LocalKernel = Arc<dyn Fn(f64) -> Result<ExtReal> + Send + Sync>;

/// A one-argument density `g` for the local energy `max g([u](t))`.
#[derive(Clone)]
pub struct LocalDensity {
    name: String,
    declared_infimum: ExtReal,
    kernel: LocalKernel,
}

impl fmt::Debug for LocalDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalDensity")
            .field("name", &self.name)
            .field("declared_infimum", &self.declared_infimum)
            .finish()
    }
}

impl LocalDensity {
    pub fn new<F>(name: impl Into<String>, declared_infimum: ExtReal, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        LocalDensity {
            name: name.into(),
            declared_infimum,
            kernel: Arc::new(move |x| {
                ExtReal::from_f64(f(x)).ok_or(Error::NotANumber { x, y: 0.0 })
            }),
        }
    }

    /// `sin-ratio` (`|sin x|/x`), `abs`, `neg-abs`, `constant:<c>` or
    /// `user-expression:<expr in x>`.
    pub fn from_spec(spec: &str, declared_infimum: Option<ExtReal>) -> Result<Self> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (spec.trim(), None),
        };
        Ok(match (name, param) {
            ("sin-ratio", None) => LocalDensity::new("sin-ratio", ExtReal::Finite(-1.0), sin_ratio),
            ("abs", None) => LocalDensity::new("abs", ExtReal::ZERO, f64::abs),
            ("neg-abs", None) => LocalDensity::new("neg-abs", ExtReal::Bottom, |x: f64| -x.abs()),
            ("constant", Some(p)) => {
                let c = parse_real(p)?;
                LocalDensity::new(format!("constant:{c}"), ExtReal::Finite(c), move |_| c)
            }
            ("user-expression", Some(src)) => {
                let expr = Expr::parse(src)?;
                if expr.uses(Var::Y) {
                    return Err(Error::Expression(
                        "one-argument densities may only use `x`".into(),
                    ));
                }
                let inf = declared_infimum.ok_or_else(|| {
                    Error::InvalidParameter(
                        "user-expression densities must declare their infimum".into(),
                    )
                })?;
                let name = format!("user-expression:{expr}");
                LocalDensity {
                    name,
                    declared_infimum: inf,
                    kernel: Arc::new(move |x| {
                        let v = expr.eval(x, 0.0)?;
                        ExtReal::from_f64(v).ok_or(Error::NotANumber { x, y: 0.0 })
                    }),
                }
            }
            _ => return Err(Error::UnknownSupremand(spec.to_string())),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> Result<ExtReal> {
        (self.kernel)(x)
    }

    pub fn declared_infimum(&self) -> ExtReal {
        self.declared_infimum
    }

    pub fn compose_increasing<F>(&self, label: &str, f: F) -> LocalDensity
    where
        F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
    {
        let inner = self.clone();
        let g = f.clone();
        LocalDensity {
            name: format!("{label}({})", self.name),
            declared_infimum: self.declared_infimum.map_finite(&f),
            kernel: Arc::new(move |x| Ok(inner.eval(x)?.map_finite(&g))),
        }
    }
}

/// All ordered pairs of alphabet entries, row-major.
pub fn alphabet_pairs(alphabet: &[f64]) -> Vec<(f64, f64)> {
    alphabet
        .iter()
        .flat_map(|&x| alphabet.iter().map(move |&y| (x, y)))
        .collect()
}

fn pointwise_check(
    probe: &[(f64, f64)],
    tol: f64,
    kind: WitnessKind,
    compare: impl Fn(f64, f64) -> Result<(ExtReal, ExtReal)>,
    fails: impl Fn(ExtReal, ExtReal) -> bool,
) -> Result<CheckReport> {
    if probe.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut checked = 0;
    let mut skipped = 0;
    for &(x, y) in probe {
        if x == 0.0 || y == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "probe pair ({x}, {y}) has a zero coordinate"
            )));
        }
        let (lhs, rhs) = match compare(x, y) {
            Ok(v) => v,
            Err(Error::OutOfDomain { .. }) | Err(Error::NotInAlphabet(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        if fails(lhs, rhs) {
            let witness = ViolationWitness::new(kind, vec![x, y], lhs, rhs);
            return Ok(CheckReport::fail(witness, checked, skipped, tol));
        }
    }
    Ok(CheckReport::pass(checked, skipped, tol))
}

/// `h(ξ, η) = h(η, ξ)` at every probe pair, within `tol` on finite values.
///
/// The witness carries `(h(ξ, η), h(η, ξ))` as `(lhs, rhs)`.
pub fn is_symmetric(h: &dyn Density, probe: &[(f64, f64)], tol: f64) -> Result<CheckReport> {
    pointwise_check(
        probe,
        tol,
        WitnessKind::Asymmetric,
        |x, y| Ok((h.eval(x, y)?, h.eval(y, x)?)),
        |a, b| !a.approx_eq(b, tol),
    )
}

/// `h(ξ, η) = ĥ(ξ, η)` at every probe pair; the witness carries `(ĥ, h)`.
pub fn is_diagonal(h: &dyn Density, probe: &[(f64, f64)], tol: f64) -> Result<CheckReport> {
    pointwise_check(
        probe,
        tol,
        WitnessKind::NonDiagonal,
        |x, y| {
            let hat = [h.eval(x, x)?, h.eval(y, y)?, h.eval(y, x)?, h.eval(x, y)?]
                .into_iter()
                .max()
                .unwrap();
            Ok((hat, h.eval(x, y)?))
        },
        |hat, v| !hat.approx_eq(v, tol),
    )
}
