//! Vertex type symbols for decorated graphs and trees.

use std::fmt;

/// Which of the three loop-vertex variants a symbol belongs to.
///
/// Ordered `Plain < Handle < Cross`, which matches the closure order of
/// nonplanar and nonorientable ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Plain,
    Handle,
    Cross,
}

/// Loop count trichotomy: one loop gives an isolated end, two or more a Cantor set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopKind {
    O,
    Theta,
}

/// A decoration symbol.
///
/// Starred symbols record the genus and orientability carried by a vertex
/// without loops; the remaining six record loop vertices. The derived order
/// is the total order used wherever symbols are sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeSymbol {
    /// Orientable, finite genus.
    StarOrient(u64),
    /// Orientable, infinite genus.
    StarInf,
    /// Nonorientable with the given (positive) number of cross-caps.
    StarCross(u64),
    /// Nonorientable, infinite genus.
    StarInfCross,
    O,
    Oh,
    Oc,
    Theta,
    ThetaH,
    ThetaC,
}

impl TypeSymbol {
    pub fn is_starred(self) -> bool {
        matches!(
            self,
            Self::StarOrient(_) | Self::StarInf | Self::StarCross(_) | Self::StarInfCross
        )
    }

    pub fn loop_kind(self) -> Option<LoopKind> {
        match self {
            Self::O | Self::Oh | Self::Oc => Some(LoopKind::O),
            Self::Theta | Self::ThetaH | Self::ThetaC => Some(LoopKind::Theta),
            _ => None,
        }
    }

    pub fn is_theta(self) -> bool {
        self.loop_kind() == Some(LoopKind::Theta)
    }

    /// Variant class of a loop symbol; `None` for starred symbols.
    pub fn variant(self) -> Option<Variant> {
        match self {
            Self::O | Self::Theta => Some(Variant::Plain),
            Self::Oh | Self::ThetaH => Some(Variant::Handle),
            Self::Oc | Self::ThetaC => Some(Variant::Cross),
            _ => None,
        }
    }

    pub fn loop_symbol(kind: LoopKind, variant: Variant) -> Self {
        match (kind, variant) {
            (LoopKind::O, Variant::Plain) => Self::O,
            (LoopKind::O, Variant::Handle) => Self::Oh,
            (LoopKind::O, Variant::Cross) => Self::Oc,
            (LoopKind::Theta, Variant::Plain) => Self::Theta,
            (LoopKind::Theta, Variant::Handle) => Self::ThetaH,
            (LoopKind::Theta, Variant::Cross) => Self::ThetaC,
        }
    }

    pub fn is_orientable_star(self) -> bool {
        matches!(self, Self::StarOrient(_) | Self::StarInf)
    }

    /// Token used in canonical codes and DOT labels.
    pub fn token(self) -> String {
        match self {
            Self::StarOrient(i) => format!("s{i}"),
            Self::StarCross(i) => format!("sc{i}"),
            Self::StarInf => "sinf".into(),
            Self::StarInfCross => "sinfc".into(),
            Self::O => "o".into(),
            Self::Oh => "oh".into(),
            Self::Oc => "oc".into(),
            Self::Theta => "t".into(),
            Self::ThetaH => "th".into(),
            Self::ThetaC => "tc".into(),
        }
    }

    /// Inverse of [`TypeSymbol::token`].
    pub fn from_token(token: &str) -> Option<Self> {
        Some(match token {
            "sinf" => Self::StarInf,
            "sinfc" => Self::StarInfCross,
            "o" => Self::O,
            "oh" => Self::Oh,
            "oc" => Self::Oc,
            "t" => Self::Theta,
            "th" => Self::ThetaH,
            "tc" => Self::ThetaC,
            _ => {
                let (digits, cross) = match token.strip_prefix("sc") {
                    Some(rest) => (rest, true),
                    None => (token.strip_prefix('s')?, false),
                };
                if digits.is_empty()
                    || !digits.bytes().all(|b| b.is_ascii_digit())
                    || (digits.len() > 1 && digits.starts_with('0'))
                {
                    return None;
                }
                let n: u64 = digits.parse().ok()?;
                if cross {
                    if n == 0 {
                        return None;
                    }
                    Self::StarCross(n)
                } else {
                    Self::StarOrient(n)
                }
            }
        })
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}
