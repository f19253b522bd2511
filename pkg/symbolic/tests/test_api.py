"""POST /api/toric/check/ and /api/toric/lie/"""

from unittest.mock import patch

from rest_framework import status
from rest_framework.test import APITestCase

from symbolic.exceptions import RetryBudgetExceeded

QUADRIC = "ring x1 x2 x3\ngen x1*x2 - x3^2\n"
SCALARS = "ring x y\ngen x^4\ngen y^4\ngen x^3*y - x*y^3\n"


class CheckToricAPITests(APITestCase):
    url = "/api/toric/check/"

    def test_toric(self):
        """A toric quadric returns its verdict"""
        response = self.client.post(self.url, {"ideal": QUADRIC, "seed": 2}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["status"], "Toric")
        self.assertEqual(response.data["torus_dim"], 2)
        self.assertEqual(response.data["complexity"], 0)

    def test_not_prime(self):
        response = self.client.post(self.url, {"ideal": "ring x y\ngen x*y\n"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["status"], "BinomialNotPrime")
        self.assertTrue(response.data["witness"])

    def test_affine(self):
        """affine=true reports the translation"""
        response = self.client.post(self.url, {"ideal": "ring x\ngen x - 1\n", "affine": True}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["affine_part"]["translation"], ["1"])

    def test_non_homogeneous_rejected(self):
        response = self.client.post(self.url, {"ideal": "ring x\ngen x - 1\n"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("ideal", response.data)

    def test_malformed_ideal(self):
        response = self.client.post(self.url, {"ideal": "ring x y\ngen x +* y\n"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("ideal", response.data)

    def test_invalid_options(self):
        response = self.client.post(self.url, {"ideal": QUADRIC, "max_retries": 0}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("max_retries", response.data)

    @patch("symbolic.views.decide")
    def test_unexpected_error(self, mock_decide):
        mock_decide.side_effect = RuntimeError("boom")
        response = self.client.post(self.url, {"ideal": QUADRIC}, format="json")
        self.assertEqual(response.status_code, status.HTTP_500_INTERNAL_SERVER_ERROR)
        self.assertEqual(response.data["error"], "Failed to decide toricity")

    def test_get_not_allowed(self):
        response = self.client.get(self.url)
        self.assertEqual(response.status_code, status.HTTP_405_METHOD_NOT_ALLOWED)


class LieAlgebraAPITests(APITestCase):
    url = "/api/toric/lie/"

    def test_scalars(self):
        response = self.client.post(self.url, {"ideal": SCALARS}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["dim_g"], 1)
        self.assertEqual(response.data["basis"], [[["1", "0"], ["0", "1"]]])
        self.assertEqual(response.data["toral_dim"], 1)

    def test_quadric(self):
        response = self.client.post(self.url, {"ideal": QUADRIC}, format="json")
        self.assertEqual(response.data["dim_g"], 4)
        self.assertEqual(response.data["cartan_dim"], 2)

    @patch("symbolic.views.cartan_decomposition")
    def test_retry_budget(self, mock_decomposition):
        mock_decomposition.side_effect = RetryBudgetExceeded("cartan subalgebra", 1)
        response = self.client.post(self.url, {"ideal": QUADRIC}, format="json")
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertIn("after 1 attempts", response.data["error"])
