# nbpractice test suite
