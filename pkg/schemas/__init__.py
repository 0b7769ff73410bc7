# Initialize schemas package