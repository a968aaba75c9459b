# Tests package for api module
