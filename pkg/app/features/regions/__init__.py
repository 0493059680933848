"""Algorithm selection and region-membership evaluation."""
