# Initialize lie package
