/// Sparse table for O(1) range minimum queries after O(n log n) setup.
#[derive(Clone, Debug)]
pub struct SparseTableMin<T> {
    levels: Vec<Vec<T>>,
}

impl<T: Copy + PartialOrd> SparseTableMin<T> {
    pub fn new(values: &[T]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<T> = (0..=values.len() - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if b < a {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTableMin { levels }
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    pub fn get(&self, i: usize) -> T {
        self.levels[0][i]
    }

    pub fn values(&self) -> &[T] {
        &self.levels[0]
    }

    /// Minimum over the closed index range between `i` and `j` (either order).
    #[inline]
    pub fn min(&self, i: usize, j: usize) -> T {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let k = (usize::BITS - 1 - (j - i + 1).leading_zeros()) as usize;
        let row = &self.levels[k];
        let (a, b) = (row[i], row[j + 1 - (1 << k)]);
        if b < a {
            b
        } else {
            a
        }
    }
}
