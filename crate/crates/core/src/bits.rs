//! Fixed-width bitsets for clique search and vertex incidence.

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    w: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { w: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.w[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.w[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.w[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits { w: self.w.iter().zip(&o.w).map(|(a, b)| a & b).collect() }
    }

    pub fn and_not(&self, o: &Bits) -> Bits {
        Bits { w: self.w.iter().zip(&o.w).map(|(a, b)| a & !b).collect() }
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits { w: self.w.iter().zip(&o.w).map(|(a, b)| a | b).collect() }
    }

    pub fn and_count(&self, o: &Bits) -> usize {
        self.w.iter().zip(&o.w).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.w.iter().zip(&o.w).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().flat_map(|(wi, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(wi * 64 + t)
            })
        })
    }
}
