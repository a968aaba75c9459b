# Django migrations package
