//! Input files: a `ring { ... }` block followed by optional `ideal`, `module`
//! and `formal_sum` blocks.
//!
//! ```text
//! ring { p = 2; vars = [x,y,z]; weights = [1,1,1]; quotient = ["x^3+y^3+z^3"]; }
//! ideal { gens = ["y","z"]; u = "x^2"; }
//! module { shifts = [0,0]; relations = [["x","y"]]; submodule = [["x","0"]]; element = ["0","y"]; }
//! formal_sum { terms = "family(e){ x1^(-1/p^e) * x2^(-e) }"; vars = [x1,x2]; }
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::graded_modules::{ModuleElement, PresentedModule, SubmoduleSpec};
use crate::ideal::IdealSpec;
use crate::perfect_hull::{parse_formal_sum, FormalSum};
use crate::poly::Polynomial;
use crate::ring::RingContext;

#[derive(Clone, Debug)]
pub struct ModuleInput {
    pub module: PresentedModule,
    pub submodule: Option<SubmoduleSpec>,
    pub element: Option<ModuleElement>,
}

#[derive(Clone, Debug)]
pub struct FormalSumInput {
    pub names: Vec<String>,
    pub sum: FormalSum,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub ring: RingContext,
    pub ideal: Option<IdealSpec>,
    pub u: Option<Polynomial>,
    pub module: Option<ModuleInput>,
    pub formal_sum: Option<FormalSumInput>,
}

#[derive(Clone, Debug)]
enum Val {
    Int(i64),
    Ident(String),
    Str(String),
    List(Vec<(usize, Val)>),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, at, msg)
    }

    fn skip(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') || trimmed.starts_with("//") {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip();
        let at = self.pos;
        let rest = &self.src[at..];
        let len = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_alphabetic() || *c == '_' || (*i > 0 && c.is_ascii_digit()))
            .count();
        if len == 0 {
            return Err(self.err(at, "expected an identifier"));
        }
        self.pos += len;
        Ok((at, rest[..len].to_string()))
    }

    fn value(&mut self) -> Result<(usize, Val)> {
        self.skip();
        let at = self.pos;
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat(']') {
                    loop {
                        items.push(self.value()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                        if self.eat(']') {
                            break;
                        }
                    }
                }
                Ok((at, Val::List(items)))
            }
            Some('"') => {
                self.pos += 1;
                let rest = &self.src[self.pos..];
                let end = rest.find('"').ok_or_else(|| self.err(at, "unterminated string"))?;
                self.pos += end + 1;
                Ok((at + 1, Val::Str(rest[..end].to_string())))
            }
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let rest = &self.src[at..];
                let len = rest.char_indices().take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-')).count();
                self.pos += len;
                rest[..len].parse().map(|n| (at, Val::Int(n))).map_err(|_| self.err(at, "bad integer"))
            }
            Some(_) => {
                let (at, s) = self.ident()?;
                Ok((at, Val::Ident(s)))
            }
            None => Err(self.err(at, "unexpected end of input")),
        }
    }
}

type Entries = Vec<(usize, String, usize, Val)>;

struct Block {
    at: usize,
    name: String,
    entries: Entries,
}

fn lex_blocks(src: &str) -> Result<Vec<Block>> {
    let mut lx = Lexer { src, pos: 0 };
    let mut blocks = Vec::new();
    while lx.peek().is_some() {
        let (at, name) = lx.ident()?;
        lx.expect('{')?;
        let mut entries = Vec::new();
        while !lx.eat('}') {
            let (kat, key) = lx.ident()?;
            lx.expect('=')?;
            let (vat, val) = lx.value()?;
            entries.push((kat, key, vat, val));
            if !lx.eat(';') && lx.peek() != Some('}') {
                return Err(lx.err(lx.pos, "expected `;` or `}`"));
            }
        }
        blocks.push(Block { at, name, entries });
    }
    Ok(blocks)
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, at, msg)
    }

    /// Errors from parsing a quoted string are reported at the string's position.
    fn inner(&self, at: usize, e: Error) -> Error {
        match e {
            Error::Parse { column, message, .. } => self.err(at + column.saturating_sub(1), message),
            other => other,
        }
    }

    fn int(&self, at: usize, v: &Val) -> Result<i64> {
        match v {
            Val::Int(n) => Ok(*n),
            _ => Err(self.err(at, "expected an integer")),
        }
    }

    fn list<'v>(&self, at: usize, v: &'v Val) -> Result<&'v [(usize, Val)]> {
        match v {
            Val::List(items) => Ok(items),
            _ => Err(self.err(at, "expected a list")),
        }
    }

    fn string<'v>(&self, at: usize, v: &'v Val) -> Result<&'v str> {
        match v {
            Val::Str(s) => Ok(s),
            _ => Err(self.err(at, "expected a quoted string")),
        }
    }

    fn name(&self, at: usize, v: &Val) -> Result<String> {
        match v {
            Val::Ident(s) | Val::Str(s) => Ok(s.clone()),
            _ => Err(self.err(at, "expected a name")),
        }
    }

    fn poly(&self, ring: &RingContext, at: usize, v: &Val) -> Result<Polynomial> {
        let s = self.string(at, v)?;
        Polynomial::parse(ring, s).map_err(|e| self.inner(at, e))
    }

    fn poly_vec(&self, ring: &RingContext, at: usize, v: &Val) -> Result<Vec<Polynomial>> {
        self.list(at, v)?.iter().map(|(a, x)| self.poly(ring, *a, x)).collect()
    }

    fn poly_matrix(&self, ring: &RingContext, at: usize, v: &Val) -> Result<Vec<Vec<Polynomial>>> {
        self.list(at, v)?.iter().map(|(a, x)| self.poly_vec(ring, *a, x)).collect()
    }

    fn ring(&self, block: &Block) -> Result<RingContext> {
        let (mut p, mut vars, mut weights, mut quotient) = (None, None, None, Vec::new());
        for (kat, key, vat, val) in &block.entries {
            match key.as_str() {
                "p" => p = Some((*vat, self.int(*vat, val)?)),
                "vars" => {
                    vars = Some(self.list(*vat, val)?.iter().map(|(a, x)| self.name(*a, x)).collect::<Result<Vec<_>>>()?)
                }
                "weights" => {
                    weights = Some(
                        self.list(*vat, val)?
                            .iter()
                            .map(|(a, x)| {
                                u32::try_from(self.int(*a, x)?).map_err(|_| self.err(*a, "weights must be positive"))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "quotient" => {
                    quotient = self.list(*vat, val)?.iter().map(|(a, x)| Ok((*a, self.string(*a, x)?.to_string()))).collect::<Result<_>>()?
                }
                other => return Err(self.err(*kat, format!("unknown ring key `{other}`"))),
            }
        }
        let (pat, p) = p.ok_or_else(|| self.err(block.at, "ring block needs `p`"))?;
        if p < 2 {
            return Err(Error::NotPrime(p.max(0) as u64));
        }
        let vars = vars.ok_or_else(|| self.err(block.at, "ring block needs `vars`"))?;
        let mut ring = RingContext::new(p as u64, &vars).map_err(|e| match e {
            Error::Invalid(m) => self.err(pat, m),
            other => other,
        })?;
        if let Some(w) = weights {
            ring = ring.with_weights(&w)?;
        }
        if !quotient.is_empty() {
            let base = ring.clone();
            let mut polys = Vec::new();
            for (at, s) in &quotient {
                polys.push(Polynomial::parse(&base, s).map_err(|e| self.inner(*at, e))?);
            }
            ring = ring.with_relation_polys(&polys)?;
        }
        Ok(ring)
    }
}

/// Parses the text of an input file.
pub fn parse_spec(src: &str) -> Result<SpecFile> {
    let ctx = Ctx { src };
    let blocks = lex_blocks(src)?;
    let first = blocks.first().ok_or_else(|| ctx.err(0, "expected a `ring { ... }` block"))?;
    if first.name != "ring" {
        return Err(ctx.err(first.at, "the first block must be `ring`"));
    }
    let ring = ctx.ring(first)?;
    let mut out = SpecFile {
        ring: ring.clone(),
        ideal: None,
        u: None,
        module: None,
        formal_sum: None,
    };
    for block in &blocks[1..] {
        match block.name.as_str() {
            "ideal" => {
                let mut gens = None;
                for (kat, key, vat, val) in &block.entries {
                    match key.as_str() {
                        "gens" => gens = Some(ctx.poly_vec(&ring, *vat, val)?),
                        "u" => out.u = Some(ctx.poly(&ring, *vat, val)?),
                        other => return Err(ctx.err(*kat, format!("unknown ideal key `{other}`"))),
                    }
                }
                let gens = gens.ok_or_else(|| ctx.err(block.at, "ideal block needs `gens`"))?;
                out.ideal = Some(IdealSpec::new(&ring, gens)?);
            }
            "module" => {
                let (mut shifts, mut relations, mut sub, mut element, mut graded) = (None, Vec::new(), None, None, None);
                for (kat, key, vat, val) in &block.entries {
                    match key.as_str() {
                        "shifts" => {
                            shifts = Some(ctx.list(*vat, val)?.iter().map(|(a, x)| ctx.int(*a, x)).collect::<Result<Vec<_>>>()?)
                        }
                        "relations" => relations = ctx.poly_matrix(&ring, *vat, val)?,
                        "submodule" => sub = Some(ctx.poly_matrix(&ring, *vat, val)?),
                        "element" => element = Some((*vat, ctx.poly_vec(&ring, *vat, val)?)),
                        "graded" => {
                            graded = Some(match val {
                                Val::Ident(s) if s == "true" => true,
                                Val::Ident(s) if s == "false" => false,
                                _ => return Err(ctx.err(*vat, "expected true or false")),
                            })
                        }
                        other => return Err(ctx.err(*kat, format!("unknown module key `{other}`"))),
                    }
                }
                let shifts = shifts.ok_or_else(|| ctx.err(block.at, "module block needs `shifts`"))?;
                let rank = shifts.len();
                let module = PresentedModule::new(&ring, shifts, relations, graded.unwrap_or(ring.is_graded()))?;
                let submodule = sub
                    .map(|gs| {
                        if gs.iter().any(|g| g.len() != rank) {
                            return Err(Error::Invalid(format!("submodule generators must have length {rank}")));
                        }
                        Ok(SubmoduleSpec::new(gs.into_iter().map(ModuleElement::new).collect()))
                    })
                    .transpose()?;
                let element = element
                    .map(|(at, v)| {
                        if v.len() != rank {
                            return Err(ctx.err(at, format!("element must have length {rank}")));
                        }
                        Ok(ModuleElement::new(v))
                    })
                    .transpose()?;
                out.module = Some(ModuleInput {
                    module,
                    submodule,
                    element,
                });
            }
            "formal_sum" => {
                let mut terms = None;
                let mut names: Vec<String> = ring.names().to_vec();
                for (kat, key, vat, val) in &block.entries {
                    match key.as_str() {
                        "terms" => terms = Some((*vat, ctx.string(*vat, val)?.to_string())),
                        "vars" => {
                            names = ctx.list(*vat, val)?.iter().map(|(a, x)| ctx.name(*a, x)).collect::<Result<_>>()?
                        }
                        other => return Err(ctx.err(*kat, format!("unknown formal_sum key `{other}`"))),
                    }
                }
                let (at, terms) = terms.ok_or_else(|| ctx.err(block.at, "formal_sum block needs `terms`"))?;
                let sum = parse_formal_sum(&terms, ring.p(), &names).map_err(|e| ctx.inner(at, e))?;
                out.formal_sum = Some(FormalSumInput { names, sum });
            }
            other => return Err(ctx.err(block.at, format!("unknown block `{other}`"))),
        }
    }
    Ok(out)
}

pub fn parse_spec_file(path: &Path) -> Result<SpecFile> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&src)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONE: &str = r#"
# cubical cone in characteristic 2
ring { p = 2; vars = [x,y,z]; weights = [1,1,1]; quotient = ["x^3+y^3+z^3"]; }
ideal { gens = ["y","z"]; }
"#;

    #[test]
    fn cubical_cone_file() {
        let s = parse_spec(CONE).unwrap();
        assert_eq!(s.ring.relations().len(), 1);
        assert_eq!(s.ideal.unwrap().generators().len(), 2);
        assert!(s.ring.is_graded());
    }

    #[test]
    fn non_prime() {
        let err = parse_spec("ring { p = 4; vars = [x]; }").unwrap_err();
        assert!(err.to_string().contains("p must be prime"), "{err}");
    }

    #[test]
    fn inhomogeneous_relation() {
        let err = parse_spec(r#"ring { p = 2; vars = [x,y]; weights = [1,1]; quotient = ["x^2+y"]; }"#).unwrap_err();
        assert!(matches!(err, Error::InhomogeneousRelation(_)), "{err}");
    }

    #[test]
    fn module_graded_invariant() {
        let src = r#"ring { p = 2; vars = [x,y]; weights = [1,1]; }
module { shifts = [0,0]; relations = [["x","y^2"]]; }"#;
        assert!(matches!(parse_spec(src).unwrap_err(), Error::GradedInvariant(_)));
        let ok = r#"ring { p = 2; vars = [x,y]; weights = [1,1]; }
module { shifts = [0,1]; relations = [["x^2","y"]]; submodule = [["x","0"]]; element = ["0", "y"]; }"#;
        let m = parse_spec(ok).unwrap().module.unwrap();
        assert_eq!(m.module.rank(), 2);
        assert!(m.submodule.is_some() && m.element.is_some());
    }

    #[test]
    fn positions() {
        let err = parse_spec("ring { p = 2; vars = [x]; }\nideal { gens = [\"x\" \"y\"]; }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_spec("ring { p = 2; vars = [x]; }\nideal { gens = [\"x + w\"]; }").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 22)),
            other => panic!("{other}"),
        }
        let err = parse_spec("ring { p = 2; vars = [x]; colour = 3; }").unwrap_err();
        assert!(err.to_string().contains("colour"));
    }

    #[test]
    fn formal_sum_block() {
        let src = r#"ring { p = 3; vars = [a,b]; }
formal_sum { terms = "2*x1^(-1/3) + family(e){ x1^(-1/p^e) * x2^(-e) }"; vars = [x1, x2]; }"#;
        let f = parse_spec(src).unwrap().formal_sum.unwrap();
        assert_eq!(f.names, vec!["x1", "x2"]);
        assert_eq!(f.sum.families().len(), 1);
    }
}
