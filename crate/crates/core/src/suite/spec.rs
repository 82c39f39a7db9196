//! Textual family specifications such as `hopf_cylinder(kappa=2)`,
//! `conoid(mu=1,a=0)` or `lightcone(umbilic(A=1,u0=0))`.
//!
//! Grammar:
//!
//! ```text
//! spec  := name [ "(" arg { "," arg } ")" ]
//! arg   := key "=" value | spec
//! value := number | number ":" number | spec
//! ```
//!
//! Keys are case-insensitive. Any family accepts `u=lo:hi` and `v=lo:hi`
//! to override its parameter domain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::families::{
    minimal_profile, umbilic_profile, ComplexCircle, Conoid, HopfCylinder, HyperbolicCurve, LightconeSurface, Pitch,
    ProfileFunction,
};
use crate::surface::{Domain, Immersion};

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Kappa(f64),
    Geodesic,
    Horocycle { y0: f64 },
    Ray { alpha: f64 },
    Circle { rho: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Umbilic {
        a: f64,
        u0: f64,
    },
    Minimal {
        a: f64,
        b: f64,
    },
    ExpSine {
        c: [f64; 5],
    },
    /// `A cos^2(u + u0) + eps`, the negative control for umbilicity.
    Perturbed {
        a: f64,
        u0: f64,
        eps: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    HopfCylinder(CurveSpec),
    Conoid { mu: f64, a: f64 },
    Lightcone(ProfileSpec),
    ComplexCircle { a: f64, b: f64, minimal: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub u: Option<(f64, f64)>,
    pub v: Option<(f64, f64)>,
}

/// A built family: a surface in `G`, or a complex circle in `H^3_1`.
pub enum Family {
    Surface(Box<dyn Immersion>),
    ComplexCircle(ComplexCircle, Domain),
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        Self { kind, u: None, v: None }
    }

    pub fn hopf(kappa: f64) -> Self {
        Self::new(FamilyKind::HopfCylinder(CurveSpec::Kappa(kappa)))
    }

    pub fn conoid(mu: f64) -> Self {
        Self::new(FamilyKind::Conoid { mu, a: 0.0 })
    }

    pub fn lightcone(p: ProfileSpec) -> Self {
        Self::new(FamilyKind::Lightcone(p))
    }

    /// Base curve of a Hopf cylinder family, with any `v` override applied.
    pub fn hopf_curve(&self) -> Result<Option<HyperbolicCurve>> {
        let FamilyKind::HopfCylinder(c) = &self.kind else { return Ok(None) };
        let curve = match c {
            CurveSpec::Kappa(k) => HyperbolicCurve::with_curvature(*k)?,
            CurveSpec::Geodesic => HyperbolicCurve::geodesic(),
            CurveSpec::Horocycle { y0 } => HyperbolicCurve::horocycle(*y0)?,
            CurveSpec::Ray { alpha } => HyperbolicCurve::ray(*alpha)?,
            CurveSpec::Circle { rho } => HyperbolicCurve::circle(*rho)?,
        };
        Ok(Some(match self.v {
            Some(v) => curve.with_domain(v)?,
            None => curve,
        }))
    }

    /// Profile of a lightcone family, with any `u` override applied.
    pub fn lightcone_profile(&self) -> Result<Option<ProfileFunction>> {
        let FamilyKind::Lightcone(p) = &self.kind else { return Ok(None) };
        let profile = match p {
            ProfileSpec::Umbilic { a, u0 } => umbilic_profile(*a, *u0)?.shrunk(0.02)?,
            ProfileSpec::Minimal { a, b } => minimal_profile(*a, *b)?.shrunk(0.02)?,
            ProfileSpec::ExpSine { c } => ProfileFunction::exp_sine(*c, (-1.0, 1.0))?,
            ProfileSpec::Perturbed { a, u0, eps } => {
                let (a, u0, eps) = (*a, *u0, *eps);
                let base = umbilic_profile(a, u0)?.shrunk(0.02)?;
                ProfileFunction::closed_form(format!("perturbed(A={a},u0={u0},eps={eps})"), base.domain, move |u| {
                    let c = (u + u0).cos();
                    let (s2, c2) = (2.0 * (u + u0)).sin_cos();
                    (a * c * c + eps, -a * s2, -2.0 * a * c2)
                })?
            }
        };
        Ok(Some(match self.u {
            Some(u) => profile.with_domain(u)?,
            None => profile,
        }))
    }

    fn domain_over(&self, d: Domain) -> Result<Domain> {
        let mut d2 = Domain::new(self.u.unwrap_or(d.u), self.v.unwrap_or(d.v))?;
        d2.periodic_u = d.periodic_u && self.u.is_none();
        d2.periodic_v = d.periodic_v && self.v.is_none();
        Ok(d2)
    }

    pub fn hopf_surface(&self) -> Result<Option<HopfCylinder>> {
        let Some(curve) = self.hopf_curve()? else { return Ok(None) };
        if self.u.is_some() {
            return Err(GeomError::InvalidArgument("Hopf cylinders have u = [0, 2 pi)".into()));
        }
        Ok(Some(HopfCylinder::new(curve)?))
    }

    pub fn conoid_surface(&self) -> Result<Option<Conoid>> {
        let FamilyKind::Conoid { mu, a } = self.kind else { return Ok(None) };
        let (u, v) = crate::families::conoid::DEFAULT_CONOID_DOMAIN;
        let d = self.domain_over(Domain::new(u, v)?)?;
        Ok(Some(Conoid::helicoidal_on(Pitch(mu), a, d)?))
    }

    pub fn lightcone_surface(&self) -> Result<Option<LightconeSurface>> {
        let Some(profile) = self.lightcone_profile()? else { return Ok(None) };
        let mut s = LightconeSurface::new(profile);
        if let Some(v) = self.v {
            s.v_range = v;
        }
        Ok(Some(s))
    }

    pub fn build(&self) -> Result<Family> {
        if let FamilyKind::ComplexCircle { a, b, minimal } = self.kind {
            let c = if minimal { ComplexCircle::minimal(a.asinh()) } else { ComplexCircle::new(a, b)? };
            return Ok(Family::ComplexCircle(c, self.domain_over(Domain::new((-3.0, 3.0), (-1.5, 1.5))?)?));
        }
        let s: Box<dyn Immersion> = if let Some(h) = self.hopf_surface()? {
            Box::new(h)
        } else if let Some(c) = self.conoid_surface()? {
            Box::new(c)
        } else {
            Box::new(self.lightcone_surface()?.expect("remaining kind is lightcone"))
        };
        Ok(Family::Surface(s))
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::Kappa(k) => write!(f, "kappa={k}"),
            CurveSpec::Geodesic => write!(f, "geodesic"),
            CurveSpec::Horocycle { y0 } => write!(f, "horocycle(y0={y0})"),
            CurveSpec::Ray { alpha } => write!(f, "ray(alpha={alpha})"),
            CurveSpec::Circle { rho } => write!(f, "circle(rho={rho})"),
        }
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Umbilic { a, u0 } => write!(f, "umbilic(A={a},u0={u0})"),
            ProfileSpec::Minimal { a, b } => write!(f, "minimal(A={a},B={b})"),
            ProfileSpec::ExpSine { c } => {
                write!(f, "exp_sine(c0={},c1={},c2={},c3={},c4={})", c[0], c[1], c[2], c[3], c[4])
            }
            ProfileSpec::Perturbed { a, u0, eps } => write!(f, "perturbed(A={a},u0={u0},eps={eps})"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::HopfCylinder(c) => write!(f, "hopf_cylinder({c}")?,
            FamilyKind::Conoid { mu, a } => write!(f, "conoid(mu={mu},a={a}")?,
            FamilyKind::Lightcone(p) => write!(f, "lightcone({p}")?,
            FamilyKind::ComplexCircle { a, minimal: true, .. } => write!(f, "complex_circle(t={}", a.asinh())?,
            FamilyKind::ComplexCircle { a, b, .. } => write!(f, "complex_circle(a={a},b={b}")?,
        }
        if let Some((lo, hi)) = self.u {
            write!(f, ",u={lo}:{hi}")?;
        }
        if let Some((lo, hi)) = self.v {
            write!(f, ",v={lo}:{hi}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Num(f64),
    Range(f64, f64),
    Node(Node),
}

#[derive(Debug, Clone, PartialEq)]
struct Node {
    name: String,
    args: Vec<(Option<String>, Value)>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err(msg: impl Into<String>) -> GeomError {
    GeomError::InvalidArgument(msg.into())
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start..].starts_with(|c: char| c.is_ascii_digit()) {
            return Err(err(format!("expected a name at offset {start} in '{}'", self.src)));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| err(format!("bad number '{}' in '{}'", &self.src[start..self.pos], self.src)))
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_ws();
        if self.peek().is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+')) {
            let a = self.number()?;
            if self.eat(':') {
                return Ok(Value::Range(a, self.number()?));
            }
            Ok(Value::Num(a))
        } else {
            Ok(Value::Node(self.node()?))
        }
    }

    fn node(&mut self) -> Result<Node> {
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                let save = self.pos;
                let id = self.ident();
                let arg = match id {
                    Ok(key) if self.eat('=') => (Some(key.to_ascii_lowercase()), self.value()?),
                    _ => {
                        self.pos = save;
                        (None, self.value()?)
                    }
                };
                args.push(arg);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(err(format!("expected ',' or ')' at offset {} in '{}'", self.pos, self.src)));
                }
            }
        }
        Ok(Node { name: name.to_ascii_lowercase(), args })
    }
}

struct Args {
    family: String,
    items: Vec<(Option<String>, Value)>,
}

impl Args {
    fn take(&mut self, key: &str) -> Option<Value> {
        let i = self.items.iter().position(|(k, _)| k.as_deref() == Some(key))?;
        Some(self.items.remove(i).1)
    }

    fn num(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Num(x)) => Ok(Some(x)),
            Some(v) => Err(err(format!("{}: '{key}' must be a number, got {v:?}", self.family))),
        }
    }

    fn req(&mut self, key: &str) -> Result<f64> {
        self.num(key)?.ok_or_else(|| err(format!("{}: missing '{key}'", self.family)))
    }

    fn range(&mut self, key: &str) -> Result<Option<(f64, f64)>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Range(a, b)) => Ok(Some((a, b))),
            Some(v) => Err(err(format!("{}: '{key}' must be lo:hi, got {v:?}", self.family))),
        }
    }

    fn positional(&mut self) -> Option<Node> {
        let i = self.items.iter().position(|(k, v)| k.is_none() && matches!(v, Value::Node(_)))?;
        match self.items.remove(i).1 {
            Value::Node(n) => Some(n),
            _ => None,
        }
    }

    fn sub(&mut self, key: &str) -> Option<Node> {
        match self.take(key) {
            Some(Value::Node(n)) => Some(n),
            _ => self.positional(),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some((k, v)) = self.items.first() {
            return Err(err(format!(
                "{}: unexpected argument {}{v:?}",
                self.family,
                k.as_ref().map(|k| format!("{k}=")).unwrap_or_default()
            )));
        }
        Ok(())
    }
}

fn args_of(n: Node) -> Args {
    Args { family: n.name, items: n.args }
}

fn curve_spec(n: Node) -> Result<CurveSpec> {
    let mut a = args_of(n);
    let c = match a.family.as_str() {
        "geodesic" => CurveSpec::Geodesic,
        "horocycle" => CurveSpec::Horocycle { y0: a.num("y0")?.unwrap_or(1.0) },
        "ray" => CurveSpec::Ray { alpha: a.req("alpha")? },
        "circle" => CurveSpec::Circle { rho: a.req("rho")? },
        other => return Err(err(format!("unknown curve '{other}'"))),
    };
    a.finish()?;
    Ok(c)
}

fn profile_spec(n: Node) -> Result<ProfileSpec> {
    let mut a = args_of(n);
    let p = match a.family.as_str() {
        "umbilic" => ProfileSpec::Umbilic { a: a.num("a")?.unwrap_or(1.0), u0: a.num("u0")?.unwrap_or(0.0) },
        "minimal" => ProfileSpec::Minimal { a: a.num("a")?.unwrap_or(1.0), b: a.num("b")?.unwrap_or(0.0) },
        "perturbed" => ProfileSpec::Perturbed {
            a: a.num("a")?.unwrap_or(1.0),
            u0: a.num("u0")?.unwrap_or(0.0),
            eps: a.num("eps")?.unwrap_or(0.1),
        },
        "exp_sine" => {
            let mut c = [1.0, 0.0, 0.0, 1.0, 0.0];
            for (i, ci) in c.iter_mut().enumerate() {
                if let Some(x) = a.num(&format!("c{i}"))? {
                    *ci = x;
                }
            }
            ProfileSpec::ExpSine { c }
        }
        other => return Err(err(format!("unknown profile '{other}'"))),
    };
    a.finish()?;
    Ok(p)
}

impl FromStr for FamilySpec {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let node = p.node()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(err(format!("trailing input at offset {} in '{s}'", p.pos)));
        }
        let mut a = args_of(node);
        let (u, v) = (a.range("u")?, a.range("v")?);
        let kind = match a.family.as_str() {
            "hopf_cylinder" | "hopf" => match a.num("kappa")? {
                Some(k) => FamilyKind::HopfCylinder(CurveSpec::Kappa(k)),
                None => {
                    let c = a.sub("curve").ok_or_else(|| err("hopf_cylinder: need kappa=K or a curve"))?;
                    FamilyKind::HopfCylinder(curve_spec(c)?)
                }
            },
            "conoid" => FamilyKind::Conoid { mu: a.req("mu")?, a: a.num("a")?.unwrap_or(0.0) },
            "lightcone" => {
                let n = a.sub("profile").ok_or_else(|| err("lightcone: need a profile"))?;
                FamilyKind::Lightcone(profile_spec(n)?)
            }
            "complex_circle" => match a.num("t")? {
                Some(t) => FamilyKind::ComplexCircle { a: t.sinh(), b: t.cosh(), minimal: true },
                None => FamilyKind::ComplexCircle { a: a.req("a")?, b: a.req("b")?, minimal: false },
            },
            other => return Err(err(format!("unknown family '{other}'"))),
        };
        a.finish()?;
        Ok(FamilySpec { kind, u, v })
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let cases = [
            ("hopf_cylinder(kappa=2)", FamilyKind::HopfCylinder(CurveSpec::Kappa(2.0))),
            ("hopf_cylinder(geodesic)", FamilyKind::HopfCylinder(CurveSpec::Geodesic)),
            ("hopf_cylinder(horocycle)", FamilyKind::HopfCylinder(CurveSpec::Horocycle { y0: 1.0 })),
            ("conoid(mu=0.3)", FamilyKind::Conoid { mu: 0.3, a: 0.0 }),
            ("lightcone(umbilic(A=1,u0=0))", FamilyKind::Lightcone(ProfileSpec::Umbilic { a: 1.0, u0: 0.0 })),
            ("lightcone(profile=minimal(A=1, B=0.5))", FamilyKind::Lightcone(ProfileSpec::Minimal { a: 1.0, b: 0.5 })),
            ("complex_circle(a=0, b=1)", FamilyKind::ComplexCircle { a: 0.0, b: 1.0, minimal: false }),
        ];
        for (s, k) in cases {
            assert_eq!(s.parse::<FamilySpec>().unwrap().kind, k, "{s}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "hopf_cylinder(kappa=-1.5)",
            "hopf_cylinder(circle(rho=0.5),v=0:1)",
            "conoid(mu=2,a=0.1,u=-1:1)",
            "lightcone(exp_sine(c0=1,c1=0.2,c2=0.1,c3=2,c4=0))",
            "lightcone(perturbed(A=1,u0=0,eps=0.1))",
            "complex_circle(t=0.5)",
        ] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string().parse::<FamilySpec>().unwrap(), f);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in [
            "",
            "hopf_cylinder(kappa=)",
            "conoid(mu=1",
            "conoid(mu=1,zz=3)",
            "lightcone",
            "torus(r=1)",
            "conoid(mu=1) x",
        ] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn builds_every_kind() {
        for s in ["hopf_cylinder(kappa=3)", "conoid(mu=1)", "lightcone(minimal(A=1,B=0))", "complex_circle(t=0.5)"] {
            assert!(s.parse::<FamilySpec>().unwrap().build().is_ok(), "{s}");
        }
        assert!("complex_circle(a=1,b=1)".parse::<FamilySpec>().unwrap().build().is_err());
    }
}
