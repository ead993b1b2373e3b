/// Index tuples of a finite cartesian product, last coordinate fastest.
///
/// An empty list of factors yields exactly one (empty) tuple; any empty
/// factor yields nothing.
pub struct Odometer {
    lens: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(lens: Vec<usize>) -> Self {
        let cur = if lens.contains(&0) { None } else { Some(vec![0; lens.len()]) };
        Odometer { lens, cur }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut n = cur.len();
        loop {
            if n == 0 {
                self.cur = None;
                break;
            }
            n -= 1;
            cur[n] += 1;
            if cur[n] < self.lens[n] {
                break;
            }
            cur[n] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::Odometer;

    #[test]
    fn counts() {
        assert_eq!(Odometer::new(vec![]).count(), 1);
        assert_eq!(Odometer::new(vec![2, 3]).count(), 6);
        assert_eq!(Odometer::new(vec![2, 0]).count(), 0);
        assert_eq!(Odometer::new(vec![2, 2]).nth(1), Some(vec![0, 1]));
    }
}
