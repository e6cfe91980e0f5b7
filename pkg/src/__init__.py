"""rate-region-kit - capacity regions of 3-receiver broadcast channels"""
