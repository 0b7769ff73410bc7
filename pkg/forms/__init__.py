# Initialize forms package
