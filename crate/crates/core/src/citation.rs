//! Tags naming the published statement a verdict or table row rests on.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Citation {
    KatsuraList,
    Thm1_4,
    Thm2_2,
    Thm2_3,
    Cor2_5,
    Thm2_8,
    Thm2_9,
    Lemma4_1,
    Thm4_2,
    Cor4_3,
    Prop5_1,
    Lemma5_2,
    Prop5_4,
    Prop6_1,
    Thm6_2,
    Thm6_6,
    Thm6_7,
    Lemma7_2,
    Lemma7_3,
    Prop7_4,
    Thm7_7,
    Thm7_12,
    Artin,
}

impl Citation {
    pub fn label(&self) -> &'static str {
        match self {
            Citation::KatsuraList => "Thm 1.3",
            Citation::Thm1_4 => "Thm 1.4",
            Citation::Thm2_2 => "Thm 2.2",
            Citation::Thm2_3 => "Thm 2.3",
            Citation::Cor2_5 => "Cor 2.5",
            Citation::Thm2_8 => "Thm 2.8",
            Citation::Thm2_9 => "Thm 2.9",
            Citation::Lemma4_1 => "Lemma 4.1",
            Citation::Thm4_2 => "Thm 4.2",
            Citation::Cor4_3 => "Cor 4.3",
            Citation::Prop5_1 => "Prop 5.1",
            Citation::Lemma5_2 => "Lemma 5.2",
            Citation::Prop5_4 => "Prop 5.4",
            Citation::Prop6_1 => "Prop 6.1",
            Citation::Thm6_2 => "Thm 6.2",
            Citation::Thm6_6 => "Thm 6.6",
            Citation::Thm6_7 => "Thm 6.7",
            Citation::Lemma7_2 => "Lemma 7.2",
            Citation::Lemma7_3 => "Lemma 7.3",
            Citation::Prop7_4 => "Prop 7.4",
            Citation::Thm7_7 => "Thm 7.7",
            Citation::Thm7_12 => "Thm 7.12",
            Citation::Artin => "Artin",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
