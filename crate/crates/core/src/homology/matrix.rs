use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Dense integer matrix. Entries are `i64` until a value outside that range
/// is stored, after which the whole matrix is held as `BigInt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Data,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Data {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: Data::Small(vec![0; rows * cols]),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        IntegerMatrix {
            rows: r,
            cols: c,
            data: Data::Small(data),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match &self.data {
            Data::Small(d) => BigInt::from(d[i * self.cols + j]),
            Data::Big(d) => d[i * self.cols + j].clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        let idx = i * self.cols + j;
        match &mut self.data {
            Data::Small(d) => d[idx] = value,
            Data::Big(d) => d[idx] = BigInt::from(value),
        }
    }

    pub fn set_big(&mut self, i: usize, j: usize, value: BigInt) {
        let idx = i * self.cols + j;
        if let Data::Small(d) = &mut self.data {
            match value.to_i64() {
                Some(v) => {
                    d[idx] = v;
                    return;
                }
                None => self.data = Data::Big(d.iter().map(|&x| BigInt::from(x)).collect()),
            }
        }
        if let Data::Big(d) = &mut self.data {
            d[idx] = value;
        }
    }

    pub fn is_big(&self) -> bool {
        matches!(self.data, Data::Big(_))
    }

    pub(crate) fn as_i64(&self) -> Option<&[i64]> {
        match &self.data {
            Data::Small(d) => Some(d),
            Data::Big(_) => None,
        }
    }

    pub(crate) fn to_big_entries(&self) -> Vec<BigInt> {
        match &self.data {
            Data::Small(d) => d.iter().map(|&x| BigInt::from(x)).collect(),
            Data::Big(d) => d.clone(),
        }
    }

    /// Matrix product, exact.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::from(0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set_big(i, j, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Small(d) => d.iter().all(|&x| x == 0),
            Data::Big(d) => d.iter().all(|x| *x == BigInt::from(0)),
        }
    }
}
