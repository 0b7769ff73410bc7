# Initialize catalog package
