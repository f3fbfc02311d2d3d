//! Built-in named inputs, stored in the same text formats as files.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grouphom::{FiniteHom, Permutations};
use crate::scalar::Coeff;
use crate::seifert::SeifertMatrix;
use crate::text::{
    parse_hom, parse_monodromy, parse_presentation, parse_seifert, NamedEndo, NamedPresentation, TargetHom,
};

pub const TREFOIL_MONODROMY: &str = "\
generators: x y
x -> y^-1
y -> x y
";

pub const TREFOIL_SEIFERT: &str = "\
2
-1 1
0 -1
";

pub const FIGURE8_SEIFERT: &str = "\
2
1 1
0 -1
";

/// Wirtinger relations of a two-component surgery diagram, then the two
/// surgery relations.
pub const PAPER_S5_PRESENTATION: &str = "\
generators: a b c d e f p q r s t u
relator: q^-1 f q a^-1
relator: p^-1 a p b^-1
relator: e^-1 b e c^-1
relator: s c s^-1 d^-1
relator: r d r^-1 e^-1
relator: b^-1 e b f^-1
relator: b^-1 u b p^-1
relator: a^-1 p a q^-1
relator: t^-1 q t r^-1
relator: d r d^-1 s^-1
relator: c s c^-1 t^-1
relator: q^-1 t q u^-1
relator: q p e s^-1 r^-1 b f^-1
relator: b a t d^-1 c^-1 q u^-1
";

pub const PAPER_S5_HOM: &str = "\
target: A5
a = (1 3 2)
b = (1 4 2)
c = (1 2 5)
d = (2 4 3)
e = (1 4 5)
f = (1 5 2)
p = (1 3 5 4 2)
q = (1 5 4 3 2)
r = (1 2 5 3 4)
s = (1 4 5 2 3)
t = (1 5 3 2 4)
u = (1 4 3 5 2)
";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    TrefoilMonodromy,
    TrefoilSeifert,
    Figure8Seifert,
    PaperS5,
}

impl Fixture {
    pub const ALL: [Fixture; 4] =
        [Fixture::TrefoilMonodromy, Fixture::TrefoilSeifert, Fixture::Figure8Seifert, Fixture::PaperS5];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::TrefoilMonodromy => "trefoil-monodromy",
            Fixture::TrefoilSeifert => "trefoil-seifert",
            Fixture::Figure8Seifert => "figure8-seifert",
            Fixture::PaperS5 => "paper-s5",
        }
    }

    pub fn load<T: Coeff>(self) -> Result<Payload<T>> {
        Ok(match self {
            Fixture::TrefoilMonodromy => Payload::Monodromy(parse_monodromy(TREFOIL_MONODROMY)?),
            Fixture::TrefoilSeifert => Payload::Seifert(parse_seifert(TREFOIL_SEIFERT)?),
            Fixture::Figure8Seifert => Payload::Seifert(parse_seifert(FIGURE8_SEIFERT)?),
            Fixture::PaperS5 => {
                let presentation = parse_presentation(PAPER_S5_PRESENTATION)?;
                let TargetHom::Permutation(hom) = parse_hom(PAPER_S5_HOM, &presentation.names)? else {
                    unreachable!("the fixture targets A5");
                };
                Payload::Representation { presentation, hom }
            }
        })
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload<T: Coeff> {
    Monodromy(NamedEndo),
    Seifert(SeifertMatrix<T>),
    Representation { presentation: NamedPresentation, hom: FiniteHom<Permutations> },
}
