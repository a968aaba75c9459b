"""
Integration tests for the burst-code REST endpoints.
"""

import numpy as np
from django.test import TestCase
from rest_framework import status
from rest_framework.test import APIClient

from api.models import CampaignRun
from burstcode.codec import encode
from burstcode.core import Word, delete_burst
from burstcode.params import derive_params

SMALL = {'q': 3, 't': 1, 'n': 841, 'sketch_mode': 'raw'}


class HealthCheckTest(TestCase):
    """Tests for the health endpoint"""

    def test_healthy(self):
        """Test that the database and the default instance are healthy"""
        response = APIClient().get('/api/health/')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['status'], 'healthy')
        self.assertEqual(data['services']['database']['status'], 'healthy')
        self.assertEqual(data['services']['codec']['status'], 'healthy')


class ParamsEndpointTest(TestCase):
    """Tests for parameter derivation over HTTP"""

    def setUp(self):
        self.client = APIClient()
        self.url = '/api/params/'

    def test_derive(self):
        """Test the 6561 example instance"""
        response = self.client.post(self.url, {'q': 3, 't': 1, 'n': 6561}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['params']['delta'], 318)
        self.assertEqual(data['params']['rho'], 954)
        self.assertEqual(data['redundancy']['r'], data['params']['r'])

    def test_defaults_from_settings(self):
        """Test that an empty body uses the BURST_CODE defaults"""
        response = self.client.post(self.url, {}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json()['params']['n'], 6561)


class EncodeDecodeEndpointTest(TestCase):
    """Tests for encoding and decoding over HTTP"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = derive_params(3, 1, 841, sketch_mode='raw')
        rng = np.random.default_rng(12)
        cls.u = Word.of(rng.integers(0, 3, size=840), 3)
        cls.z = encode(cls.u, cls.params)

    def setUp(self):
        self.client = APIClient()

    def test_encode(self):
        """Test encoding a message of n - 1 symbols"""
        response = self.client.post('/api/encode/', dict(SMALL, message=list(self.u.symbols)),
                                    format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['codeword'], list(self.z.symbols))
        self.assertEqual(data['length'], self.params.codeword_length)

    def test_decode_after_burst(self):
        """Test that a body burst is corrected and reported as case 1.1"""
        yz = delete_burst(self.z, 400, 1)
        response = self.client.post('/api/decode/', dict(SMALL, received=list(yz.symbols)),
                                    format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['message'], list(self.u.symbols))
        self.assertEqual(data['case'], '1.1')

    def test_decode_intact(self):
        """Test decoding an undamaged codeword"""
        response = self.client.post('/api/decode/', dict(SMALL, received=list(self.z.symbols)),
                                    format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json()['case'], 'intact')


class CampaignEndpointTest(TestCase):
    """Tests for running and listing campaigns"""

    def setUp(self):
        self.client = APIClient()
        self.url = '/api/campaigns/'

    def test_run_and_store(self):
        """Test that a sampled codec campaign runs, passes and is stored"""
        body = dict(SMALL, messages=1, bursts='sample:5', seed=3)
        response = self.client.post(self.url, body, format='json')
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        data = response.json()
        self.assertTrue(data['passed'])
        self.assertEqual(data['trials'], 6)
        self.assertEqual(data['report']['failure_count'], 0)
        self.assertEqual(CampaignRun.objects.count(), 1)

        listing = self.client.get(self.url)
        self.assertEqual(listing.status_code, status.HTTP_200_OK)
        self.assertEqual(len(listing.json()['campaigns']), 1)
        self.assertNotIn('report', listing.json()['campaigns'][0])

        detail = self.client.get(f"{self.url}{data['id']}/")
        self.assertEqual(detail.status_code, status.HTTP_200_OK)
        self.assertEqual(detail.json()['report']['suite'], 'codec')

    def test_tenengolts_suite(self):
        """Test a stored tenengolts campaign over words of length 2 to 4"""
        body = dict(SMALL, suite='tenengolts', window=4)
        response = self.client.post(self.url, body, format='json')
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.json()['trials'], sum(3 ** k * k for k in range(2, 5)))

    def test_missing_run(self):
        """Test 404 for an unknown campaign run"""
        response = self.client.get(f'{self.url}999/')
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)
        self.assertEqual(response.json()['error']['code'], 'NOT_FOUND')
