# Initialize formality package
