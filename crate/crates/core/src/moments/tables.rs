//! Published two-rebit moment tables, stored verbatim.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    /// `<|rho^PT|^n>`, n = 1..13
    AppA,
    /// `<(|rho| |rho^PT|)^n>`, n = 1..13
    AppB,
    /// `<|rho^PT|^n>` on minimally degenerate states, n = 1..10
    AppC,
}

impl std::str::FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "appa" | "a" => Ok(Self::AppA),
            "appb" | "b" => Ok(Self::AppB),
            "appc" | "c" => Ok(Self::AppC),
            other => Err(Error::InvalidArgument(format!("unknown table {other:?}"))),
        }
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::AppA => "appA",
            Self::AppB => "appB",
            Self::AppC => "appC",
        })
    }
}

const APP_A: [&str; 13] = [
    "-1/858",
    "27/2489344",
    "-8363/66216550400",
    "21859/10443295948800",
    "-23071/539633583390720",
    "3317321/3253917653076541440",
    "-419856257/15366774022001834065920",
    "16945249/21117403549591928832000",
    "-6102620963/240565904621616585139814400",
    "87816716413/103068223454742370906999357440",
    "-7685831825319/255310031843279606667374504181760",
    "23559692226221/21217623285399369347467109090721792",
    "-31283325154283/736092406055063912488279599166259200",
];

const APP_B: [&str; 13] = [
    "0",
    "7/5696343244800",
    "1/677899511057612800",
    "1/45973294808920227840000",
    "1/11662680803407302839532257280",
    "3929/4158654163938276392103553381781471232",
    "1/158158366213274948625327048295175946240",
    "71527/1091771390479438557169317171313498708778365747200",
    "4847/8524774835462825812953111833131999123882778862551040",
    "2637/441859421690475898778224458156196857558486829112995348480",
    "1/16833241044745336849504728327369136893812113975649318731776",
    "66838003/103562821755098721107694750210986399334006111231977898090691403395891200",
    "55601/7991978474394124344137676945763648296251134760058623476703807122125619200",
];

const APP_C: [&str; 10] = [
    "-5/2376",
    "7/380160",
    "-9/34777600",
    "443/89942261760",
    "-461/4032782401536",
    "5455/1785064543223808",
    "-631/6948198442598400",
    "474017/161763811601154048000",
    "-4003573/39645007353595350220800",
    "3397/924892257224239349760",
];

fn rows(table: TableId) -> &'static [&'static str] {
    match table {
        TableId::AppA => &APP_A,
        TableId::AppB => &APP_B,
        TableId::AppC => &APP_C,
    }
}

pub fn table_len(table: TableId) -> u32 {
    rows(table).len() as u32
}

pub fn table_lookup(table: TableId, n: u32) -> Result<Rational> {
    let data = rows(table);
    if n == 0 || n as usize > data.len() {
        return Err(Error::TableRow {
            table: table.to_string(),
            row: n,
        });
    }
    parse_rational(data[n as usize - 1])
}
