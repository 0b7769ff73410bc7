# Initialize algebra package
