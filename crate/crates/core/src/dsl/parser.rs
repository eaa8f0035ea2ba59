//! Recursive-descent parser for manifold files and queries.

use super::lexer::{lex, ParseError, Pos, Tok};
use crate::arith::Mat2;
use crate::quadint::{QMat, QuadInt};

pub const KEYWORDS: &[&str] = &["vertex", "edge", "base", "gen", "free", "cone", "fiber", "ring", "relation", "torus"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

/// Generator powers; empty means the identity.
pub type WordAst = Vec<(Name, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindAst {
    FreeAbelian,
    CircleBundle,
    ConeSfs,
    Kleinian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemAst {
    Gen { name: Name, matrix: Option<QMat> },
    Free(Name),
    Cone { name: Name, alpha: i64, beta: i64 },
    Fiber(Name),
    Ring { sym: Name, p: i64, q: i64 },
    Relation { lhs: WordAst, rhs: WordAst, pos: Pos },
    Torus { u: WordAst, v: WordAst, pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexAst {
    pub name: Name,
    pub kind: KindAst,
    pub items: Vec<ItemAst>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeAst {
    pub name: Name,
    pub from: Name,
    pub from_torus: (usize, Pos),
    pub m_bar: (Mat2, Pos),
    pub to: Name,
    pub to_torus: (usize, Pos),
    pub m: (Mat2, Pos),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ManifoldAst {
    pub vertices: Vec<VertexAst>,
    pub edges: Vec<EdgeAst>,
    pub base: Option<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAst {
    pub vertex: Option<Name>,
    pub words: Vec<WordAst>,
    /// Edge name and whether it is the reverse edge (`e^-1`).
    pub edges: Vec<(Name, bool)>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAst {
    Reduce(PathAst),
    Equal(PathAst, PathAst),
    Commute(PathAst, PathAst),
    Classify(PathAst, PathAst),
    Centralizer(PathAst),
    Divisibility(PathAst),
    Malnormal { vertex: Name, torus: (usize, Pos), g: PathAst, x: PathAst },
    ConjClass(PathAst),
    Validate,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::new(self.pos(), format!("expected {expected}, found {}", self.peek())))
    }

    fn expect(&mut self, t: Tok) -> PResult<Pos> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.err(&t.to_string())
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        if self.at_keyword(kw) {
            Ok(self.bump().1)
        } else {
            self.err(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.bump().1;
                Ok(Name { text: s, pos })
            }
            _ => self.err("identifier"),
        }
    }

    /// An identifier that is not a reserved word.
    fn decl_name(&mut self) -> PResult<Name> {
        let n = self.ident()?;
        if KEYWORDS.contains(&n.text.as_str()) {
            return Err(ParseError::new(n.pos, format!("`{}` is a reserved word", n.text)));
        }
        Ok(n)
    }

    fn uint(&mut self) -> PResult<(i64, Pos)> {
        match *self.peek() {
            Tok::Int(n) => Ok((n, self.bump().1)),
            _ => self.err("integer"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let (n, _) = self.uint()?;
        Ok(if neg { -n } else { n })
    }

    fn mat2(&mut self) -> PResult<(Mat2, Pos)> {
        let pos = self.expect(Tok::LBracket)?;
        let mut m = [[0; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            if r > 0 {
                self.expect(Tok::Comma)?;
            }
            self.expect(Tok::LBracket)?;
            row[0] = self.int()?;
            self.expect(Tok::Comma)?;
            row[1] = self.int()?;
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::RBracket)?;
        Ok((Mat2(m), pos))
    }

    /// `a + b·sym` written as a sum of terms `INT`, `INT? sym`.
    fn qint(&mut self, sym: &str) -> PResult<QuadInt> {
        let mut acc = QuadInt::ZERO;
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Tok::Minus => {
                    self.bump();
                    -1
                }
                Tok::Plus if !first => {
                    self.bump();
                    1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let coef = match *self.peek() {
                Tok::Int(n) => {
                    self.bump();
                    Some(n)
                }
                _ => None,
            };
            match self.peek().clone() {
                Tok::Ident(s) if s == sym => {
                    self.bump();
                    acc.b += sign * coef.unwrap_or(1);
                }
                Tok::Ident(s) => {
                    return Err(ParseError::new(self.pos(), format!("unknown ring symbol `{s}` (the ring symbol is `{sym}`)")))
                }
                _ => match coef {
                    Some(c) => acc.a += sign * c,
                    None => return self.err("integer or ring symbol"),
                },
            }
            if acc.a.abs() > super::lexer::MAX_LITERAL || acc.b.abs() > super::lexer::MAX_LITERAL {
                return Err(ParseError::new(self.pos(), "matrix entry too large"));
            }
        }
        Ok(acc)
    }

    fn qmat(&mut self, sym: &str) -> PResult<QMat> {
        self.expect(Tok::LBracket)?;
        let mut m = [[QuadInt::ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            if r > 0 {
                self.expect(Tok::Comma)?;
            }
            self.expect(Tok::LBracket)?;
            row[0] = self.qint(sym)?;
            self.expect(Tok::Comma)?;
            row[1] = self.qint(sym)?;
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::RBracket)?;
        Ok(QMat(m))
    }

    fn word(&mut self) -> PResult<WordAst> {
        if *self.peek() == Tok::Int(1) {
            self.bump();
            return Ok(vec![]);
        }
        let mut w = vec![];
        while let Tok::Ident(s) = self.peek() {
            if KEYWORDS.contains(&s.as_str()) {
                break;
            }
            let name = self.ident()?;
            let e = if *self.peek() == Tok::Caret {
                self.bump();
                self.int()?
            } else {
                1
            };
            w.push((name, e));
        }
        if w.is_empty() {
            return self.err("generator word or `1`");
        }
        Ok(w)
    }

    fn kind(&mut self) -> PResult<KindAst> {
        let n = self.ident()?;
        Ok(match n.text.as_str() {
            "free_abelian" => KindAst::FreeAbelian,
            "circle_bundle" => KindAst::CircleBundle,
            "cone_sfs" => KindAst::ConeSfs,
            "kleinian" => KindAst::Kleinian,
            other => {
                return Err(ParseError::new(
                    n.pos,
                    format!("unknown vertex kind `{other}` (expected free_abelian, circle_bundle, cone_sfs or kleinian)"),
                ))
            }
        })
    }

    fn vertex(&mut self) -> PResult<VertexAst> {
        self.keyword("vertex")?;
        let name = self.decl_name()?;
        self.expect(Tok::Colon)?;
        let kind = self.kind()?;
        self.expect(Tok::LBrace)?;
        let mut items = vec![];
        let mut sym: Option<String> = None;
        loop {
            let pos = self.pos();
            let kw = match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(s) => s.clone(),
                _ => return self.err("vertex item or `}`"),
            };
            self.bump();
            let item = match kw.as_str() {
                "gen" => {
                    let name = self.decl_name()?;
                    let matrix = if *self.peek() == Tok::Eq {
                        self.bump();
                        let s = sym.clone().ok_or_else(|| ParseError::new(self.pos(), "matrix generator before `ring` declaration"))?;
                        Some(self.qmat(&s)?)
                    } else {
                        None
                    };
                    ItemAst::Gen { name, matrix }
                }
                "free" => ItemAst::Free(self.decl_name()?),
                "cone" => {
                    let name = self.decl_name()?;
                    let alpha = self.int()?;
                    let beta = self.int()?;
                    ItemAst::Cone { name, alpha, beta }
                }
                "fiber" => ItemAst::Fiber(self.decl_name()?),
                "ring" => {
                    let s = self.decl_name()?;
                    sym = Some(s.text.clone());
                    let p = self.int()?;
                    let q = self.int()?;
                    ItemAst::Ring { sym: s, p, q }
                }
                "relation" => {
                    let lhs = self.word()?;
                    self.expect(Tok::Eq)?;
                    let rhs = self.word()?;
                    ItemAst::Relation { lhs, rhs, pos }
                }
                "torus" => {
                    let u = self.word()?;
                    self.expect(Tok::Comma)?;
                    let v = self.word()?;
                    ItemAst::Torus { u, v, pos }
                }
                _ => {
                    return Err(ParseError::new(
                        pos,
                        format!("unknown vertex item `{kw}` (expected gen, free, cone, fiber, ring, relation or torus)"),
                    ))
                }
            };
            items.push(item);
        }
        Ok(VertexAst { name, kind, items })
    }

    fn torus_ref(&mut self) -> PResult<(Name, (usize, Pos))> {
        let v = self.ident()?;
        self.expect(Tok::Dot)?;
        let (k, pos) = self.uint()?;
        Ok((v, (k as usize, pos)))
    }

    fn edge(&mut self) -> PResult<EdgeAst> {
        self.keyword("edge")?;
        let name = self.decl_name()?;
        self.expect(Tok::Colon)?;
        let (from, from_torus) = self.torus_ref()?;
        let m_bar = self.mat2()?;
        self.expect(Tok::Arrow)?;
        let (to, to_torus) = self.torus_ref()?;
        let m = self.mat2()?;
        Ok(EdgeAst { name, from, from_torus, m_bar, to, to_torus, m })
    }

    fn manifold(&mut self) -> PResult<ManifoldAst> {
        let mut doc = ManifoldAst::default();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Ident(s) if s == "vertex" => doc.vertices.push(self.vertex()?),
                Tok::Ident(s) if s == "edge" => doc.edges.push(self.edge()?),
                Tok::Ident(s) if s == "base" => {
                    let pos = self.bump().1;
                    if doc.base.is_some() {
                        return Err(ParseError::new(pos, "duplicate `base` declaration"));
                    }
                    doc.base = Some(self.ident()?);
                }
                _ => return self.err("`vertex`, `edge` or `base`"),
            }
        }
        Ok(doc)
    }

    fn path(&mut self) -> PResult<PathAst> {
        let pos = self.pos();
        let vertex = if *self.peek() == Tok::At {
            self.bump();
            let v = self.ident()?;
            self.expect(Tok::Colon)?;
            Some(v)
        } else {
            None
        };
        let mut words = vec![self.word()?];
        let mut edges = vec![];
        while *self.peek() == Tok::Semi {
            self.bump();
            let e = self.ident()?;
            let inv = if *self.peek() == Tok::Caret {
                let p = self.bump().1;
                if self.int()? != -1 {
                    return Err(ParseError::new(p, "edges take only the exponent -1"));
                }
                true
            } else {
                false
            };
            edges.push((e, inv));
            self.expect(Tok::Semi)?;
            words.push(self.word()?);
        }
        Ok(PathAst { vertex, words, edges, pos })
    }

    fn query(&mut self) -> PResult<QueryAst> {
        let head = self.ident()?;
        if head.text == "validate" {
            return Ok(QueryAst::Validate);
        }
        self.expect(Tok::LParen)?;
        let q = match head.text.as_str() {
            "reduce" => QueryAst::Reduce(self.path()?),
            "centralizer" => QueryAst::Centralizer(self.path()?),
            "divisibility" => QueryAst::Divisibility(self.path()?),
            "conjclass" => QueryAst::ConjClass(self.path()?),
            "equal" | "commute" | "classify" => {
                let p = self.path()?;
                self.expect(Tok::Comma)?;
                let q = self.path()?;
                match head.text.as_str() {
                    "equal" => QueryAst::Equal(p, q),
                    "commute" => QueryAst::Commute(p, q),
                    _ => QueryAst::Classify(p, q),
                }
            }
            "malnormal" => {
                let (vertex, torus) = self.torus_ref()?;
                self.expect(Tok::Comma)?;
                let g = self.path()?;
                self.expect(Tok::Comma)?;
                let x = self.path()?;
                QueryAst::Malnormal { vertex, torus, g, x }
            }
            other => {
                return Err(ParseError::new(
                    head.pos,
                    format!("unknown query `{other}` (expected reduce, equal, commute, classify, centralizer, divisibility, malnormal, conjclass or validate)"),
                ))
            }
        };
        self.expect(Tok::RParen)?;
        Ok(q)
    }
}

fn parser(bytes: &[u8]) -> PResult<Parser> {
    Ok(Parser { toks: lex(bytes)?, i: 0 })
}

pub fn parse_manifold_ast(bytes: &[u8]) -> PResult<ManifoldAst> {
    let mut p = parser(bytes)?;
    p.manifold()
}

pub fn parse_query_ast(bytes: &[u8]) -> PResult<QueryAst> {
    let mut p = parser(bytes)?;
    let q = p.query()?;
    p.expect(Tok::Eof)?;
    Ok(q)
}

pub fn parse_path_ast(bytes: &[u8]) -> PResult<PathAst> {
    let mut p = parser(bytes)?;
    let q = p.path()?;
    p.expect(Tok::Eof)?;
    Ok(q)
}
